// vnframes/modular.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "vnframes/modular.hpp"

#include <cmath>

#include "vnframes/error.hpp"
#include "vnframes/rng.hpp"

namespace vnframes {

namespace {

Eigen::MatrixXcd plain_range_projector(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU);
  const Eigen::VectorXd s = svd.singularValues();
  int rank = 0;
  if (s.size() > 0) {
    const double cut = std::max(1e-11 * s(0), 1e-14);
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > cut) ++rank;
  }
  const Eigen::MatrixXcd u = svd.matrixU().leftCols(rank);
  return u * u.adjoint();
}

int svd_rank(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const Eigen::VectorXd s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cut = std::max(1e-10 * s(0), 1e-14);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return rank;
}

void require_in_range(const HelsonMap& map, const HelsonImage& img,
                      const char* who) {
  const Eigen::VectorXcd s = helson_stack(map, img);
  const Eigen::VectorXcd r = s - map.range_proj * s;
  if (r.norm() > 1e-8 * std::max(1.0, s.norm()))
    throw Error(std::string(who) + ": image is not in the map's range");
}

/// Columns stack(Phi_j rho(gamma)^*) over all j and gamma: a basis family
/// for the modular span of the generators.
Eigen::MatrixXcd modular_span_columns(const ModularSystem& sys) {
  const int ng = sys.map.rep.group->order;
  const int nj = static_cast<int>(sys.generators.size());
  Eigen::MatrixXcd cols(sys.map.stacked_dim(), nj * ng);
  for (int j = 0; j < nj; ++j) {
    for (int gamma = 0; gamma < ng; ++gamma) {
      // Right multiplication by rho(gamma)^* permutes fiber coefficients.
      HelsonImage img = sys.generators[j];
      for (auto& fiber : img.fibers) fiber = right_mul_rho_star(fiber, gamma);
      cols.col(j * ng + gamma) = helson_stack(sys.map, img);
    }
  }
  return cols;
}

HelsonImage frame_apply_unchecked(const ModularSystem& sys,
                                  const HelsonImage& target) {
  Eigen::VectorXcd acc =
      Eigen::VectorXcd::Zero(sys.map.stacked_dim());
  for (const auto& phi : sys.generators) {
    const VnOperator c = bracket_from_map(sys.map, target, phi);
    acc += helson_stack(sys.map, right_compose(phi, c));
  }
  return helson_unstack(sys.map, acc);
}

}  // namespace

const char* modular_class_name(ModularClass c) {
  switch (c) {
    case ModularClass::modular_riesz: return "modular_riesz";
    case ModularClass::modular_frame_not_riesz: return "modular_frame_not_riesz";
    default: return "degenerate";
  }
}

VnOperator modular_inner(const HelsonMap& map, const HelsonImage& a,
                         const HelsonImage& b) {
  require_in_range(map, a, "modular_inner");
  require_in_range(map, b, "modular_inner");
  return bracket_from_map(map, a, b);
}

ModularSystem make_modular_system(const HelsonMap& map,
                                  const std::vector<Eigen::VectorXcd>& gens) {
  if (gens.empty()) throw Error("modular system needs at least one generator");
  ModularSystem sys;
  sys.map = map;
  sys.gen_vectors = gens;
  for (const auto& g : gens) sys.generators.push_back(helson_apply(map, g));

  const int nj = static_cast<int>(gens.size());
  const int ng = map.rep.group->order;
  sys.bracket_block.assign(nj, std::vector<VnOperator>());
  for (int j = 0; j < nj; ++j)
    for (int k = 0; k < nj; ++k)
      sys.bracket_block[j].push_back(
          bracket_from_map(map, sys.generators[k], sys.generators[j]));

  sys.big_matrix.resize(nj * ng, nj * ng);
  for (int j = 0; j < nj; ++j)
    for (int k = 0; k < nj; ++k) {
      sys.big_matrix.block(j * ng, k * ng, ng, ng) =
          to_matrix(sys.bracket_block[j][k]);
      const double d = (adjoint(sys.bracket_block[j][k]).coeffs -
                        sys.bracket_block[k][j].coeffs).norm();
      sys.hermiticity_defect = std::max(sys.hermiticity_defect, d);
    }
  return sys;
}

std::vector<VnOperator> modular_square_integrability(const ModularSystem& sys) {
  const int nj = static_cast<int>(sys.generators.size());
  std::vector<VnOperator> out;
  out.reserve(nj);
  for (int j = 0; j < nj; ++j) {
    VnOperator t = vn_zero(sys.map.rep.group);
    for (int k = 0; k < nj; ++k) {
      // {Phi_j, Phi_k} is block (k, j); |A|^2 = A^* A.
      const VnOperator& a = sys.bracket_block[k][j];
      t = add(t, multiply(adjoint(a), a));
    }
    out.push_back(std::move(t));
  }
  return out;
}

ModularReport modular_classify(const ModularSystem& sys) {
  bool all_zero = true;
  for (const auto& g : sys.gen_vectors) all_zero = all_zero && g.norm() == 0.0;
  const FrameReport fr = classify_hermitian(sys.big_matrix, all_zero);
  ModularReport out;
  out.lower = fr.lower;
  out.upper = fr.upper;
  out.kernel_dim = fr.kernel_dim;
  out.spectrum = fr.spectrum;
  switch (fr.classification) {
    case FrameClass::riesz_basis_sequence:
      out.classification = ModularClass::modular_riesz;
      break;
    case FrameClass::frame_sequence_not_riesz:
      out.classification = ModularClass::modular_frame_not_riesz;
      break;
    default:
      out.classification = ModularClass::degenerate;
  }
  return out;
}

HelsonImage modular_frame_operator(const ModularSystem& sys,
                                   const HelsonImage& target) {
  require_in_range(sys.map, target, "modular_frame_operator");
  return frame_apply_unchecked(sys, target);
}

Eigen::MatrixXcd modular_frame_matrix(const ModularSystem& sys) {
  const int n = sys.map.stacked_dim();
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e(i) = 1.0;
    m.col(i) =
        helson_stack(sys.map, frame_apply_unchecked(sys, helson_unstack(sys.map, e)));
  }
  return m;
}

std::vector<HelsonImage> canonical_dual(const ModularSystem& sys) {
  const ModularReport rep = modular_classify(sys);
  if (rep.classification == ModularClass::degenerate)
    throw Error("canonical_dual: degenerate system");
  const Eigen::MatrixXcd m = modular_frame_matrix(sys);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cut = default_rank_tol(ev);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (int i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > cut) inv(i) = 1.0 / ev(i);
  const Eigen::MatrixXcd pinv_m =
      es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
  std::vector<HelsonImage> dual;
  dual.reserve(sys.generators.size());
  for (const auto& phi : sys.generators)
    dual.push_back(
        helson_unstack(sys.map, pinv_m * helson_stack(sys.map, phi)));
  return dual;
}

ReproduceResult reproduce_check(const ModularSystem& sys,
                                const std::vector<HelsonImage>& dual,
                                const HelsonImage& probe) {
  if (dual.size() != sys.generators.size())
    throw Error("reproduce_check: dual size mismatch");
  const Eigen::MatrixXcd px = plain_range_projector(modular_span_columns(sys));
  const Eigen::VectorXcd s = helson_stack(sys.map, probe);
  const Eigen::VectorXcd s0 = px * s;
  ReproduceResult out;
  out.projection_residual = (s - s0).norm();
  if (s0.norm() < 1e-14) return out;  // zero after projection: trivial
  const HelsonImage psi0 = helson_unstack(sys.map, s0);

  Eigen::VectorXcd rec1 = Eigen::VectorXcd::Zero(s.size());
  Eigen::VectorXcd rec2 = Eigen::VectorXcd::Zero(s.size());
  for (size_t j = 0; j < sys.generators.size(); ++j) {
    const VnOperator c1 = bracket_from_map(sys.map, psi0, dual[j]);
    rec1 += helson_stack(sys.map, right_compose(sys.generators[j], c1));
    const VnOperator c2 = bracket_from_map(sys.map, psi0, sys.generators[j]);
    rec2 += helson_stack(sys.map, right_compose(dual[j], c2));
  }
  out.residual_dual_coefficients = (rec1 - s0).norm() / s0.norm();
  out.residual_dual_frame = (rec2 - s0).norm() / s0.norm();
  return out;
}

MainTheoremRecord main_theorem_check(const HelsonMap& map,
                                     const std::vector<Eigen::VectorXcd>& gens,
                                     int trials, std::uint64_t seed,
                                     double rel_tol) {
  MainTheoremRecord rec;
  const OrbitSystem osys{map.rep, gens};
  rec.classical = classify(osys);
  const ModularSystem msys = make_modular_system(map, gens);
  rec.modular = modular_classify(msys);

  rec.classifications_match =
      (rec.classical.classification == FrameClass::riesz_basis_sequence &&
       rec.modular.classification == ModularClass::modular_riesz) ||
      (rec.classical.classification == FrameClass::frame_sequence_not_riesz &&
       rec.modular.classification == ModularClass::modular_frame_not_riesz) ||
      (rec.classical.classification == FrameClass::bessel_only_degenerate &&
       rec.modular.classification == ModularClass::degenerate);

  const double tiny = 1e-300;
  rec.lower_defect = std::abs(rec.classical.lower - rec.modular.lower) /
                     std::max(rec.classical.lower, tiny);
  rec.upper_defect = std::abs(rec.classical.upper - rec.modular.upper) /
                     std::max(rec.classical.upper, tiny);

  // Trace inequalities on random elements of span E with the classical
  // bounds: A tau([f,f]) <= sum_j tau(|[f,phi_j]|^2) <= B tau([f,f]).
  const Eigen::MatrixXcd syn = synthesis_matrix(osys);
  rng::Stream stream(seed);
  const double a = rec.classical.lower, b = rec.classical.upper;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXcd f = syn * stream.cgaussian_vector(syn.cols());
    const double tff = inner(map.rep, f, f).real();
    if (tff < 1e-14) continue;
    double mid = 0.0;
    for (const auto& phi : gens)
      mid += bracket(map.rep, f, phi).coeffs.squaredNorm();
    const double scale = std::max(b * tff, tiny);
    const double viol =
        std::max({0.0, (a * tff - mid) / scale, (mid - b * tff) / scale});
    rec.trace_sandwich_defect = std::max(rec.trace_sandwich_defect, viol);
  }

  rec.pass = rec.classifications_match && rec.lower_defect <= rel_tol &&
             rec.upper_defect <= rel_tol &&
             rec.trace_sandwich_defect <= rel_tol;
  return rec;
}

double multiplicative_defect(const HelsonMap& map,
                             const std::vector<Eigen::VectorXcd>& v_basis,
                             const Eigen::VectorXcd& v_in_span,
                             const VnOperator& a) {
  Eigen::MatrixXcd cols(map.stacked_dim(), v_basis.size());
  for (size_t j = 0; j < v_basis.size(); ++j)
    cols.col(static_cast<int>(j)) = map.forward * v_basis[j];
  const Eigen::MatrixXcd pm = plain_range_projector(cols);
  const HelsonImage img = helson_apply(map, v_in_span);
  const Eigen::VectorXcd s = helson_stack(map, right_compose(img, a));
  if (s.norm() < 1e-14) return 0.0;
  return (s - pm * s).norm() / s.norm();
}

double multiplicative_invariance_check(
    const HelsonMap& map, const std::vector<Eigen::VectorXcd>& v_basis,
    int trials, std::uint64_t seed) {
  rng::Stream stream(seed);
  const int ng = map.rep.group->order;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(map.rep.dim);
    for (const auto& b : v_basis) v += stream.cnormal() * b;
    VnOperator a = make_vn(map.rep.group, stream.cgaussian_vector(ng));
    const double na = a.coeffs.norm();
    if (na > 0) a.coeffs /= na;
    worst = std::max(worst, multiplicative_defect(map, v_basis, v, a));
  }
  return worst;
}

SpanCheck generator_span_check(const HelsonMap& map,
                               const std::vector<Eigen::VectorXcd>& gens,
                               std::uint64_t seed) {
  const ModularSystem sys = make_modular_system(map, gens);
  const Eigen::MatrixXcd tv_cols =
      map.forward * synthesis_matrix(OrbitSystem{map.rep, gens});
  const Eigen::MatrixXcd mod_cols = modular_span_columns(sys);

  SpanCheck out;
  out.rank_tv = svd_rank(tv_cols);
  out.rank_modular = svd_rank(mod_cols);
  const Eigen::MatrixXcd pa = plain_range_projector(tv_cols);
  const Eigen::MatrixXcd pb = plain_range_projector(mod_cols);
  const double r1 =
      spectral_norm(mod_cols - pa * mod_cols) / std::max(1.0, spectral_norm(mod_cols));
  const double r2 =
      spectral_norm(tv_cols - pb * tv_cols) / std::max(1.0, spectral_norm(tv_cols));
  out.residual = std::max(r1, r2);

  // Supported outer coefficients do not enlarge the span.
  rng::Stream stream(seed);
  const int ng = map.rep.group->order;
  Eigen::MatrixXcd appended(mod_cols.rows(),
                            mod_cols.cols() + 2 * sys.generators.size());
  appended.leftCols(mod_cols.cols()) = mod_cols;
  int at = static_cast<int>(mod_cols.cols());
  for (size_t j = 0; j < sys.generators.size(); ++j) {
    const VnOperator bj =
        bracket_from_map(map, sys.generators[j], sys.generators[j]);
    const VnOperator s = support_projection(bj);
    for (int r = 0; r < 2; ++r) {
      const VnOperator f =
          multiply(s, make_vn(map.rep.group, stream.cgaussian_vector(ng)));
      appended.col(at++) =
          helson_stack(map, right_compose(sys.generators[j], f));
    }
  }
  out.rank_outer = svd_rank(appended);
  out.pass = out.rank_tv == out.rank_modular &&
             out.rank_outer == out.rank_modular && out.residual <= 1e-10;
  return out;
}

}  // namespace vnframes
