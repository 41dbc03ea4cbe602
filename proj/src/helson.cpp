// vnframes/helson.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "vnframes/helson.hpp"

#include <cmath>

#include "vnframes/error.hpp"

namespace vnframes {

namespace {

VnOperator psd_sqrt(const VnOperator& f) {
  // Inputs are PSD up to roundoff; tiny negatives land in the kernel.
  return apply_function(
      f, [](double x) { return x <= 0.0 ? 0.0 : std::sqrt(x); }, false);
}

Eigen::VectorXcd complex_weights(const UnitaryRep& rep) {
  return rep.measure.cast<std::complex<double>>();
}

Eigen::VectorXcd w_project(const UnitaryRep& rep, const Eigen::MatrixXcd& q,
                           const Eigen::VectorXcd& v) {
  if (q.cols() == 0) return Eigen::VectorXcd::Zero(v.size());
  return q * (q.adjoint() * complex_weights(rep).cwiseProduct(v));
}

/// Pseudo-inverse of A : C^k -> (C^n, w); least squares in the weighted
/// codomain norm.
Eigen::MatrixXcd pinv_into_weighted(const UnitaryRep& rep,
                                    const Eigen::MatrixXcd& a) {
  const Eigen::VectorXcd wsqrt =
      rep.measure.cwiseSqrt().cast<std::complex<double>>();
  return pinv(wsqrt.asDiagonal() * a) * wsqrt.asDiagonal();
}

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

Eigen::MatrixXcd orbit_columns(const UnitaryRep& rep,
                               const Eigen::VectorXcd& psi) {
  const int ng = rep.group->order;
  Eigen::MatrixXcd m(rep.dim, ng);
  for (int gamma = 0; gamma < ng; ++gamma) m.col(gamma) = rep.pi(gamma) * psi;
  return m;
}

}  // namespace

WeightedSpace make_weighted_space(const VnOperator& omega) {
  const SpectralData sd = spectral(omega);
  const double top = sd.eigenvalues.size()
                         ? sd.eigenvalues.cwiseAbs().maxCoeff()
                         : 0.0;
  if (sd.eigenvalues.size() && sd.eigenvalues.minCoeff() < -1e-8 * std::max(1.0, top))
    throw Error("weighted space: weight is not positive semidefinite");
  WeightedSpace out{omega, psd_sqrt(omega), support_projection(omega)};
  return out;
}

double weighted_norm(const VnOperator& f, const WeightedSpace& w) {
  if (!same_group(f.group, w.weight.group))
    throw Error("weighted_norm: group mismatch");
  return p_norm(multiply(w.root, f), 2.0);
}

VnOperator weight_embedding(const VnOperator& f, const WeightedSpace& w) {
  if (!same_group(f.group, w.weight.group))
    throw Error("weight_embedding: group mismatch");
  return multiply(w.root, f);
}

Eigen::VectorXcd helson_stack(const HelsonMap& map, const HelsonImage& img) {
  const int ng = map.rep.group->order;
  const int nf = map.fiber_count();
  if (static_cast<int>(img.fibers.size()) != nf)
    throw Error("helson image has wrong fiber count");
  Eigen::VectorXcd s(nf * ng);
  for (int i = 0; i < nf; ++i) {
    if (img.fibers[i].coeffs.size() != ng)
      throw Error("helson fiber has wrong size");
    s.segment(i * ng, ng) = std::sqrt(map.nu(i)) * img.fibers[i].coeffs;
  }
  return s;
}

HelsonImage helson_unstack(const HelsonMap& map, const Eigen::VectorXcd& s) {
  const int ng = map.rep.group->order;
  const int nf = map.fiber_count();
  if (s.size() != nf * ng) throw Error("stacked vector has wrong size");
  HelsonImage img;
  img.base_points = map.base_points;
  img.weights = map.nu;
  img.fibers.reserve(nf);
  for (int i = 0; i < nf; ++i) {
    Eigen::VectorXcd c = s.segment(i * ng, ng) / std::sqrt(map.nu(i));
    img.fibers.push_back({map.rep.group, std::move(c)});
  }
  return img;
}

HelsonImage helson_apply(const HelsonMap& map, const Eigen::VectorXcd& v) {
  if (v.size() != map.rep.dim) throw Error("helson_apply: dimension mismatch");
  return helson_unstack(map, map.forward * v);
}

Eigen::VectorXcd helson_invert(const HelsonMap& map, const HelsonImage& img) {
  return map.inverse * helson_stack(map, img);
}

HelsonImage right_compose(const HelsonImage& img, const VnOperator& f) {
  HelsonImage out = img;
  for (auto& fiber : out.fibers) fiber = multiply(fiber, f);
  return out;
}

HelsonMap principal_map(const UnitaryRep& rep, const Eigen::VectorXcd& psi) {
  if (psi.size() != rep.dim) throw Error("principal_map: dimension mismatch");
  if (norm(rep, psi) == 0.0) throw Error("principal_map: zero generator");
  const int ng = rep.group->order;

  const VnOperator b = bracket(rep, psi, psi);
  const VnOperator broot = psd_sqrt(b);
  const Eigen::MatrixXcd msyn = orbit_columns(rep, psi);
  Eigen::MatrixXcd mcod(ng, ng);
  for (int gamma = 0; gamma < ng; ++gamma)
    mcod.col(gamma) = right_mul_rho_star(broot, gamma).coeffs;

  HelsonMap map;
  map.kind = HelsonMap::Kind::principal;
  map.rep = rep;
  map.base_points = {0};
  map.nu = Eigen::VectorXd::Ones(1);
  map.forward = mcod * pinv_into_weighted(rep, msyn);
  map.inverse = weighted_pinv(rep, map.forward);
  map.domain_proj = span_projector(rep, msyn);
  map.range_proj = plain_range_projector(map.forward);
  map.generators = {psi};
  map.fiber_supports = {support_projection(b)};
  return map;
}

Eigen::MatrixXcd gram_schmidt_w(const UnitaryRep& rep,
                                const Eigen::MatrixXcd& cols, double rel_tol) {
  Eigen::MatrixXcd q(cols.rows(), 0);
  for (int j = 0; j < cols.cols(); ++j) {
    Eigen::VectorXcd v = cols.col(j);
    const double orig = norm(rep, v);
    v -= w_project(rep, q, v);
    v -= w_project(rep, q, v);  // second pass for numerical hygiene
    const double r = norm(rep, v);
    if (r > std::max(rel_tol * std::max(orig, 1.0), 1e-14)) {
      q.conservativeResize(Eigen::NoChange, q.cols() + 1);
      q.col(q.cols() - 1) = v / r;
    }
  }
  return q;
}

std::vector<Eigen::VectorXcd> orthogonal_generators(
    const UnitaryRep& rep, const std::vector<Eigen::VectorXcd>& basis) {
  if (basis.empty()) throw Error("orthogonal_generators: empty basis");
  const int n = rep.dim;
  const int ng = rep.group->order;
  Eigen::MatrixXcd bmat(n, basis.size());
  for (size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != n)
      throw Error("orthogonal_generators: dimension mismatch");
    bmat.col(static_cast<int>(j)) = basis[j];
  }

  // The span must be Pi-invariant.
  const Eigen::MatrixXcd pv = span_projector(rep, bmat);
  for (int gamma = 0; gamma < ng; ++gamma)
    for (int j = 0; j < bmat.cols(); ++j) {
      const Eigen::VectorXcd w = rep.pi(gamma) * bmat.col(j);
      const Eigen::VectorXcd r = w - pv * w;
      if (norm(rep, r) > 1e-8 * std::max(1.0, norm(rep, w)))
        throw Error("orthogonal_generators: subspace is not invariant");
    }

  const Eigen::MatrixXcd onb = gram_schmidt_w(rep, bmat);
  const int r = static_cast<int>(onb.cols());

  std::vector<Eigen::VectorXcd> gens;
  Eigen::MatrixXcd orb_q(n, 0);
  auto extend_with_orbit = [&](const Eigen::VectorXcd& psi) {
    const Eigen::MatrixXcd orbit = orbit_columns(rep, psi);
    for (int gamma = 0; gamma < ng; ++gamma) {
      Eigen::VectorXcd v = orbit.col(gamma);
      v -= w_project(rep, orb_q, v);
      v -= w_project(rep, orb_q, v);
      const double nv = norm(rep, v);
      if (nv > 1e-10 * std::max(1.0, norm(rep, orbit.col(gamma)))) {
        orb_q.conservativeResize(Eigen::NoChange, orb_q.cols() + 1);
        orb_q.col(orb_q.cols() - 1) = v / nv;
      }
    }
  };

  for (int k = 0; k < r; ++k) {
    Eigen::VectorXcd e = onb.col(k);
    Eigen::VectorXcd resid = e - w_project(rep, orb_q, e);
    if (norm(rep, resid) <= 1e-10) {
      gens.push_back(Eigen::VectorXcd::Zero(n));  // e_k already covered
      continue;
    }
    gens.push_back(resid);
    extend_with_orbit(resid);
  }

  if (orb_q.cols() != r)
    throw Error("orthogonal_generators: orbit spaces do not exhaust V");
  // Orbits of distinct generators must be mutually orthogonal.
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[i].norm() == 0.0 || gens[j].norm() == 0.0) continue;
      const Eigen::MatrixXcd oi = orbit_columns(rep, gens[i]);
      const Eigen::MatrixXcd oj = orbit_columns(rep, gens[j]);
      const Eigen::MatrixXcd cross =
          oi.adjoint() * complex_weights(rep).asDiagonal() * oj;
      if (cross.cwiseAbs().maxCoeff() >
          1e-8 * std::max(1.0, gens[i].norm() * gens[j].norm()))
        throw Error("orthogonal_generators: orbits are not orthogonal");
    }
  return gens;
}

HelsonMap global_map(const UnitaryRep& rep,
                     const std::vector<Eigen::VectorXcd>& generators,
                     bool orthogonalize) {
  std::vector<Eigen::VectorXcd> gens;
  if (orthogonalize) {
    for (const auto& g : orthogonal_generators(rep, generators))
      if (g.norm() > 0.0) gens.push_back(g);
  } else {
    for (const auto& g : generators)
      if (g.size() != rep.dim) throw Error("global_map: dimension mismatch");
    gens = generators;
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = i + 1; j < gens.size(); ++j) {
        const Eigen::MatrixXcd cross =
            orbit_columns(rep, gens[i]).adjoint() *
            complex_weights(rep).asDiagonal() * orbit_columns(rep, gens[j]);
        if (cross.cwiseAbs().maxCoeff() >
            1e-8 * std::max(1.0, gens[i].norm() * gens[j].norm()))
          throw Error("global_map: generator orbits are not orthogonal");
      }
  }
  if (gens.empty()) throw Error("global_map: no nonzero generators");

  const int ng = rep.group->order;
  const int nf = static_cast<int>(gens.size());
  HelsonMap map;
  map.kind = HelsonMap::Kind::global;
  map.rep = rep;
  map.nu = Eigen::VectorXd::Ones(nf);
  map.forward.resize(nf * ng, rep.dim);
  map.domain_proj = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
  for (int i = 0; i < nf; ++i) {
    const HelsonMap piece = principal_map(rep, gens[i]);
    map.base_points.push_back(i);
    map.forward.middleRows(i * ng, ng) = piece.forward;
    map.domain_proj += piece.domain_proj;
    map.fiber_supports.push_back(piece.fiber_supports[0]);
  }
  map.generators = gens;
  map.inverse = weighted_pinv(rep, map.forward);
  map.range_proj = plain_range_projector(map.forward);
  return map;
}

HelsonMap zak_map(const GroupAction& action, const TilingData& tiling) {
  const TilingData t = make_tiling(action, tiling.tile);  // revalidates
  const UnitaryRep rep = action_rep_anchored(action, t.tile);
  const int ng = action.group->order;
  const int nc = static_cast<int>(t.tile.size());
  const int nx = action.set_size;

  HelsonMap map;
  map.kind = HelsonMap::Kind::zak;
  map.rep = rep;
  map.base_points = t.tile;
  map.nu.resize(nc);
  for (int c = 0; c < nc; ++c) map.nu(c) = rep.measure(t.tile[c]);

  // Z[phi](c) has Fourier coefficients (Pi(gamma^-1) phi)(tile[c]).
  map.forward.resize(nc * ng, nx);
  for (int c = 0; c < nc; ++c)
    for (int gamma = 0; gamma < ng; ++gamma)
      map.forward.row(c * ng + gamma) =
          std::sqrt(map.nu(c)) * rep.pi(action.group->inv(gamma)).row(t.tile[c]);

  // Explicit inversion formula: for x = sigma_gamma(c),
  // phi(x) = J(gamma, c)^(-1/2) * coeffs_c(gamma).
  map.inverse = Eigen::MatrixXcd::Zero(nx, nc * ng);
  for (int x = 0; x < nx; ++x) {
    const auto [gamma, c] = t.coset_map[x];
    map.inverse(x, c * ng + gamma) =
        1.0 / (std::sqrt(action.jacobian(gamma, t.tile[c])) *
               std::sqrt(map.nu(c)));
  }

  map.domain_proj = Eigen::MatrixXcd::Identity(nx, nx);
  map.range_proj = Eigen::MatrixXcd::Identity(nc * ng, nc * ng);
  map.action = std::make_shared<const GroupAction>(action);
  map.tiling = std::make_shared<const TilingData>(t);
  return map;
}

Eigen::VectorXcd operator_shift(const UnitaryRep& rep, const VnOperator& f,
                                const Eigen::VectorXcd& psi) {
  if (!same_group(f.group, rep.group)) throw Error("operator_shift: group mismatch");
  if (psi.size() != rep.dim) throw Error("operator_shift: dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rep.dim);
  for (int gamma = 0; gamma < rep.group->order; ++gamma) {
    const std::complex<double> c = f.coeffs(gamma);
    if (c != std::complex<double>(0.0, 0.0)) out += c * (rep.pi(gamma) * psi);
  }
  return out;
}

double intertwining_check(const HelsonMap& map, const VnOperator& f,
                          const Eigen::VectorXcd& phi) {
  const Eigen::VectorXcd phi_d = map.domain_proj * phi;
  if (norm(map.rep, phi - phi_d) > 1e-8 * std::max(1.0, norm(map.rep, phi)))
    throw Error("intertwining_check: vector is not in the map's domain");
  const Eigen::VectorXcd lhs =
      map.forward * operator_shift(map.rep, f, phi_d);
  const Eigen::VectorXcd rhs =
      helson_stack(map, right_compose(helson_apply(map, phi_d), f));
  return (lhs - rhs).norm() / std::max(1.0, rhs.norm());
}

BdrResult bdr_coefficient(const UnitaryRep& rep, const Eigen::VectorXcd& phi,
                          const Eigen::VectorXcd& psi, double tol) {
  if (norm(rep, psi) == 0.0) throw Error("bdr_coefficient: zero generator");
  const VnOperator b = bracket(rep, psi, psi);
  const VnOperator bpinv =
      apply_function(b, [](double x) { return 1.0 / x; }, true);
  BdrResult out;
  out.coefficient = multiply(bpinv, bracket(rep, phi, psi));
  out.residual = norm(rep, operator_shift(rep, out.coefficient, psi) - phi);
  out.in_span = out.residual <= tol * std::max(norm(rep, phi), 1e-14);
  return out;
}

VnOperator principal_s_apply(const HelsonMap& map,
                             const Eigen::VectorXcd& phi) {
  if (map.kind != HelsonMap::Kind::principal)
    throw Error("principal_s_apply: not a principal map");
  const VnOperator b = bracket(map.rep, map.generators[0], map.generators[0]);
  const VnOperator pinv_root = apply_function(
      b, [](double x) { return 1.0 / std::sqrt(x); }, true);
  return multiply(pinv_root, helson_apply(map, phi).fibers[0]);
}

VnOperator bracket_from_map(const HelsonMap& map, const HelsonImage& a,
                            const HelsonImage& b) {
  const int nf = map.fiber_count();
  if (static_cast<int>(a.fibers.size()) != nf ||
      static_cast<int>(b.fibers.size()) != nf)
    throw Error("bracket_from_map: fiber count mismatch");
  VnOperator acc = vn_zero(map.rep.group);
  for (int x = 0; x < nf; ++x) {
    const VnOperator term = multiply(adjoint(b.fibers[x]), a.fibers[x]);
    acc = add(acc, scale(term, map.nu(x)));
  }
  return acc;
}

}  // namespace vnframes
