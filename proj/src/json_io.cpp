// vnframes/json_io.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "vnframes/json_io.hpp"

#include <cmath>
#include <fstream>

namespace vnframes {

namespace {

double checked(double x) {
  if (!std::isfinite(x)) throw Error("non-finite value in JSON data");
  return x;
}

Json cplx(std::complex<double> z) {
  return Json::array({checked(z.real()), checked(z.imag())});
}

std::complex<double> cplx_from(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw Error("complex values must be [re, im] pairs");
  return {checked(j[0].get<double>()), checked(j[1].get<double>())};
}

GroupPtr resolve_group(const Json& j, const char* field,
                       const GroupPtr& fallback) {
  if (j.contains(field)) return group_from_json(j.at(field));
  if (fallback) return fallback;
  throw Error(std::string("missing \"") + field + "\" and no fallback group");
}

}  // namespace

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["order"] = g.order;
  j["labels"] = g.labels;
  j["cayley"] = g.cayley;
  return j;
}

GroupPtr group_from_json(const Json& j) {
  if (!j.is_object()) throw Error("group JSON must be an object");
  const int order = j.at("order").get<int>();
  auto cayley = j.at("cayley").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(cayley.size()) != order)
    throw Error("group JSON: order does not match the cayley table");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return make_group(std::move(labels), std::move(cayley));
}

Json vector_to_json(const Eigen::VectorXcd& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(cplx(v(i)));
  Json j;
  j["values"] = std::move(arr);
  return j;
}

Eigen::VectorXcd vector_from_json(const Json& j) {
  const Json& arr = j.is_object() ? j.at("values") : j;
  Eigen::VectorXcd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i)
    v(static_cast<int>(i)) = cplx_from(arr[i]);
  return v;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(cplx(m(i, k)));
    rows.push_back(std::move(row));
  }
  Json j;
  j["matrix"] = std::move(rows);
  return j;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? j.at("matrix") : j;
  if (rows.empty()) return Eigen::MatrixXcd(0, 0);
  const int nr = static_cast<int>(rows.size());
  const int nc = static_cast<int>(rows[0].size());
  Eigen::MatrixXcd m(nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(rows[i].size()) != nc)
      throw Error("matrix JSON has ragged rows");
    for (int k = 0; k < nc; ++k) m(i, k) = cplx_from(rows[i][k]);
  }
  return m;
}

Json vn_to_json(const VnOperator& f) {
  Json j;
  j["group"] = group_to_json(*f.group);
  Json arr = Json::array();
  for (int i = 0; i < f.coeffs.size(); ++i) arr.push_back(cplx(f.coeffs(i)));
  j["coeffs"] = std::move(arr);
  return j;
}

VnOperator vn_from_json(const Json& j, const GroupPtr& fallback) {
  const GroupPtr g = resolve_group(j, "group", fallback);
  const Json& arr = j.at("coeffs");
  if (static_cast<int>(arr.size()) != g->order)
    throw Error("operator coeffs length does not match group order");
  Eigen::VectorXcd c(g->order);
  for (int i = 0; i < g->order; ++i) c(i) = cplx_from(arr[i]);
  return make_vn(g, std::move(c));
}

Json rep_to_json(const UnitaryRep& rep) {
  Json j;
  j["group"] = group_to_json(*rep.group);
  j["dim"] = rep.dim;
  Json mats = Json::array();
  for (const auto& m : rep.matrices) mats.push_back(matrix_to_json(m)["matrix"]);
  j["matrices"] = std::move(mats);
  Json w = Json::array();
  for (int i = 0; i < rep.measure.size(); ++i) w.push_back(checked(rep.measure(i)));
  j["measure"] = std::move(w);
  return j;
}

UnitaryRep rep_from_json(const Json& j, const GroupPtr& fallback) {
  UnitaryRep rep;
  rep.group = resolve_group(j, "group", fallback);
  rep.dim = j.at("dim").get<int>();
  if (rep.dim <= 0) throw Error("representation dim must be positive");
  const Json& mats = j.at("matrices");
  if (static_cast<int>(mats.size()) != rep.group->order)
    throw Error("representation has wrong number of matrices");
  for (const auto& m : mats) {
    Eigen::MatrixXcd mat = matrix_from_json(m);
    if (mat.rows() != rep.dim || mat.cols() != rep.dim)
      throw Error("representation matrix has wrong dimensions");
    rep.matrices.push_back(std::move(mat));
  }
  if (j.contains("measure")) {
    const Json& w = j.at("measure");
    if (static_cast<int>(w.size()) != rep.dim)
      throw Error("representation measure has wrong length");
    rep.measure.resize(rep.dim);
    for (int i = 0; i < rep.dim; ++i) {
      rep.measure(i) = checked(w[i].get<double>());
      if (rep.measure(i) <= 0) throw Error("measure weights must be positive");
    }
  } else {
    rep.measure = Eigen::VectorXd::Ones(rep.dim);
  }
  const RepDiagnostics d = validate(rep);
  if (d.max_defect() > 1e-8)
    throw Error("representation JSON fails validation");
  return rep;
}

Json action_to_json(const GroupAction& a) {
  Json j;
  j["group"] = group_to_json(*a.group);
  j["set_size"] = a.set_size;
  j["perm"] = a.perm;
  Json jac = Json::array();
  for (int g = 0; g < a.jacobian.rows(); ++g) {
    Json row = Json::array();
    for (int x = 0; x < a.jacobian.cols(); ++x) row.push_back(checked(a.jacobian(g, x)));
    jac.push_back(std::move(row));
  }
  j["jacobian"] = std::move(jac);
  return j;
}

GroupAction action_from_json(const Json& j, const GroupPtr& fallback) {
  GroupAction a;
  a.group = resolve_group(j, "group", fallback);
  a.set_size = j.at("set_size").get<int>();
  a.perm = j.at("perm").get<std::vector<std::vector<int>>>();
  const Json& jac = j.at("jacobian");
  a.jacobian.resize(a.group->order, a.set_size);
  if (static_cast<int>(jac.size()) != a.group->order)
    throw Error("jacobian table has wrong number of rows");
  for (int g = 0; g < a.group->order; ++g) {
    if (static_cast<int>(jac[g].size()) != a.set_size)
      throw Error("jacobian row has wrong length");
    for (int x = 0; x < a.set_size; ++x)
      a.jacobian(g, x) = checked(jac[g][x].get<double>());
  }
  validate_action(a);
  return a;
}

Json tiling_to_json(const TilingData& t) {
  Json j;
  j["tile"] = t.tile;
  return j;
}

std::vector<int> tile_from_json(const Json& j) {
  return j.at("tile").get<std::vector<int>>();
}

Json image_to_json(const HelsonImage& img) {
  Json j;
  j["base_points"] = img.base_points;
  Json w = Json::array();
  for (int i = 0; i < img.weights.size(); ++i) w.push_back(checked(img.weights(i)));
  j["weights"] = std::move(w);
  Json fibers = Json::array();
  for (const auto& f : img.fibers) {
    Json fj;
    Json arr = Json::array();
    for (int i = 0; i < f.coeffs.size(); ++i) arr.push_back(cplx(f.coeffs(i)));
    fj["coeffs"] = std::move(arr);
    fibers.push_back(std::move(fj));
  }
  j["fibers"] = std::move(fibers);
  return j;
}

HelsonImage image_from_json(const Json& j, const GroupPtr& group) {
  HelsonImage img;
  img.base_points = j.at("base_points").get<std::vector<int>>();
  const Json& w = j.at("weights");
  img.weights.resize(w.size());
  for (size_t i = 0; i < w.size(); ++i)
    img.weights(static_cast<int>(i)) = checked(w[i].get<double>());
  for (const auto& fj : j.at("fibers")) {
    const Json& arr = fj.at("coeffs");
    Eigen::VectorXcd c(arr.size());
    for (size_t i = 0; i < arr.size(); ++i)
      c(static_cast<int>(i)) = cplx_from(arr[i]);
    img.fibers.push_back(make_vn(group, std::move(c)));
  }
  return img;
}

Json frame_report_to_json(const FrameReport& r) {
  Json j;
  j["classification"] = frame_class_name(r.classification);
  j["lower"] = checked(r.lower);
  j["upper"] = checked(r.upper);
  Json spec = Json::array();
  for (int i = 0; i < r.spectrum.size(); ++i) spec.push_back(checked(r.spectrum(i)));
  j["spectrum"] = std::move(spec);
  j["kernel_dim"] = r.kernel_dim;
  return j;
}

Json modular_report_to_json(const ModularReport& r) {
  Json j;
  j["classification"] = modular_class_name(r.classification);
  j["lower"] = checked(r.lower);
  j["upper"] = checked(r.upper);
  Json spec = Json::array();
  for (int i = 0; i < r.spectrum.size(); ++i) spec.push_back(checked(r.spectrum(i)));
  j["spectrum"] = std::move(spec);
  j["kernel_dim"] = r.kernel_dim;
  return j;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace vnframes
