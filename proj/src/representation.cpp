// vnframes/representation.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "vnframes/representation.hpp"

#include <algorithm>
#include <cmath>

#include "vnframes/error.hpp"

namespace vnframes {

bool UnitaryRep::weighted() const {
  for (int i = 0; i < measure.size(); ++i)
    if (measure(i) != 1.0) return true;
  return false;
}

std::complex<double> inner(const UnitaryRep& rep, const Eigen::VectorXcd& a,
                           const Eigen::VectorXcd& b) {
  if (a.size() != rep.dim || b.size() != rep.dim)
    throw Error("inner: vector dimension mismatch");
  std::complex<double> acc = 0.0;
  for (int i = 0; i < rep.dim; ++i)
    acc += rep.measure(i) * a(i) * std::conj(b(i));
  return acc;
}

double norm(const UnitaryRep& rep, const Eigen::VectorXcd& a) {
  return std::sqrt(std::max(0.0, inner(rep, a, a).real()));
}

double RepDiagnostics::max_defect() const {
  return std::max({unitarity_defect, homomorphism_defect, identity_defect});
}

RepDiagnostics validate(const UnitaryRep& rep) {
  if (!rep.group) throw Error("representation has no group");
  const int ng = rep.group->order;
  if (static_cast<int>(rep.matrices.size()) != ng || rep.dim <= 0)
    throw Error("representation is structurally malformed");
  for (const auto& m : rep.matrices)
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      throw Error("representation matrix has wrong dimensions");
  if (rep.measure.size() != rep.dim)
    throw Error("representation measure has wrong dimension");

  RepDiagnostics d;
  const Eigen::MatrixXcd w =
      rep.measure.cast<std::complex<double>>().asDiagonal();
  const double wnorm = rep.measure.maxCoeff();
  for (int gamma = 0; gamma < ng; ++gamma) {
    const Eigen::MatrixXcd defect =
        rep.pi(gamma).adjoint() * w * rep.pi(gamma) - w;
    d.unitarity_defect = std::max(d.unitarity_defect, defect.norm() / wnorm);
  }
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b) {
      const Eigen::MatrixXcd defect =
          rep.pi(a) * rep.pi(b) - rep.pi(rep.group->mul(a, b));
      d.homomorphism_defect = std::max(d.homomorphism_defect, defect.norm());
    }
  d.identity_defect =
      (rep.pi(rep.group->identity) -
       Eigen::MatrixXcd::Identity(rep.dim, rep.dim)).norm();
  return d;
}

UnitaryRep translation_rep(const GroupPtr& g) {
  if (!g) throw Error("translation_rep: null group");
  const int n = g->order;
  UnitaryRep rep;
  rep.group = g;
  rep.dim = n;
  rep.measure = Eigen::VectorXd::Ones(n);
  rep.matrices.resize(n);
  for (int gamma = 0; gamma < n; ++gamma) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int x = 0; x < n; ++x) m(g->mul(gamma, x), x) = 1.0;
    rep.matrices[gamma] = std::move(m);
  }
  return rep;
}

void validate_action(const GroupAction& a, double tol) {
  if (!a.group) throw Error("action has no group");
  const int ng = a.group->order, nx = a.set_size;
  if (static_cast<int>(a.perm.size()) != ng ||
      a.jacobian.rows() != ng || a.jacobian.cols() != nx)
    throw Error("action tables have wrong shapes");
  for (const auto& p : a.perm) {
    if (static_cast<int>(p.size()) != nx)
      throw Error("action permutation has wrong size");
    std::vector<char> seen(nx, 0);
    for (int v : p) {
      if (v < 0 || v >= nx || seen[v]) throw Error("action map is not a permutation");
      seen[v] = 1;
    }
  }
  const int e = a.group->identity;
  for (int x = 0; x < nx; ++x)
    if (a.perm[e][x] != x) throw Error("action of the identity is not trivial");
  for (int g1 = 0; g1 < ng; ++g1)
    for (int g2 = 0; g2 < ng; ++g2) {
      const int g12 = a.group->mul(g1, g2);
      for (int x = 0; x < nx; ++x)
        if (a.perm[g1][a.perm[g2][x]] != a.perm[g12][x])
          throw Error("action law perm(g1 g2) = perm(g1) o perm(g2) fails");
    }
  if ((a.jacobian.array() <= 0.0).any())
    throw Error("invalid-action: jacobian must be positive");
  for (int g1 = 0; g1 < ng; ++g1)
    for (int g2 = 0; g2 < ng; ++g2) {
      const int g12 = a.group->mul(g1, g2);
      for (int x = 0; x < nx; ++x) {
        const double lhs = a.jacobian(g12, x);
        const double rhs = a.jacobian(g1, a.perm[g2][x]) * a.jacobian(g2, x);
        if (std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(lhs)))
          throw Error("invalid-action: jacobian cocycle identity fails");
      }
    }
}

Eigen::VectorXd action_measure(const GroupAction& a,
                               const std::vector<int>* anchors) {
  const int ng = a.group->order, nx = a.set_size;
  Eigen::VectorXd w = Eigen::VectorXd::Constant(nx, -1.0);
  std::vector<int> base;
  if (anchors) {
    base = *anchors;
  } else {
    // Minimal index of each orbit.
    std::vector<char> covered(nx, 0);
    for (int x = 0; x < nx; ++x) {
      if (covered[x]) continue;
      base.push_back(x);
      for (int gamma = 0; gamma < ng; ++gamma) covered[a.perm[gamma][x]] = 1;
    }
  }
  for (int b : base) {
    if (b < 0 || b >= nx) throw Error("anchor point out of range");
    for (int gamma = 0; gamma < ng; ++gamma) {
      const int y = a.perm[gamma][b];
      const double v = a.jacobian(gamma, b);  // w(b) = 1
      if (w(y) < 0)
        w(y) = v;
      else if (std::abs(w(y) - v) > 1e-10 * std::max(1.0, w(y)))
        throw Error("invalid-action: jacobian inconsistent on an orbit");
    }
  }
  if ((w.array() < 0.0).any())
    throw Error("anchors do not cover every orbit");
  // Full consistency: w(sigma_gamma(x)) = J(gamma, x) w(x) everywhere.
  for (int gamma = 0; gamma < ng; ++gamma)
    for (int x = 0; x < nx; ++x) {
      const double lhs = w(a.perm[gamma][x]);
      const double rhs = a.jacobian(gamma, x) * w(x);
      if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(lhs)))
        throw Error("invalid-action: jacobian does not derive from a measure");
    }
  return w;
}

namespace {

UnitaryRep action_rep_impl(const GroupAction& a, Eigen::VectorXd measure) {
  const int ng = a.group->order, nx = a.set_size;
  UnitaryRep rep;
  rep.group = a.group;
  rep.dim = nx;
  rep.measure = std::move(measure);
  rep.matrices.resize(ng);
  for (int gamma = 0; gamma < ng; ++gamma) {
    const int gi = a.group->inv(gamma);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nx, nx);
    for (int x = 0; x < nx; ++x)
      m(x, a.perm[gi][x]) = std::sqrt(a.jacobian(gi, x));
    rep.matrices[gamma] = std::move(m);
  }
  return rep;
}

}  // namespace

UnitaryRep action_rep(const GroupAction& a) {
  validate_action(a);
  return action_rep_impl(a, action_measure(a));
}

UnitaryRep action_rep_anchored(const GroupAction& a,
                               const std::vector<int>& anchors) {
  validate_action(a);
  return action_rep_impl(a, action_measure(a, &anchors));
}

UnitaryRep direct_sum(const std::vector<UnitaryRep>& reps) {
  if (reps.empty()) throw Error("direct_sum: empty summand list");
  for (const auto& r : reps)
    if (!same_group(r.group, reps[0].group))
      throw Error("direct_sum: group mismatch");
  int dim = 0;
  for (const auto& r : reps) dim += r.dim;
  UnitaryRep out;
  out.group = reps[0].group;
  out.dim = dim;
  out.measure.resize(dim);
  int off = 0;
  for (const auto& r : reps) {
    out.measure.segment(off, r.dim) = r.measure;
    off += r.dim;
  }
  const int ng = out.group->order;
  out.matrices.resize(ng);
  for (int gamma = 0; gamma < ng; ++gamma) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    off = 0;
    for (const auto& r : reps) {
      m.block(off, off, r.dim, r.dim) = r.pi(gamma);
      off += r.dim;
    }
    out.matrices[gamma] = std::move(m);
  }
  return out;
}

UnitaryRep conjugate(const UnitaryRep& rep, const Eigen::MatrixXcd& u) {
  if (u.rows() != rep.dim || u.cols() != rep.dim)
    throw Error("conjugate: dimension mismatch");
  const Eigen::MatrixXcd w =
      rep.measure.cast<std::complex<double>>().asDiagonal();
  const Eigen::MatrixXcd gram = u.adjoint() * w * u;
  if ((gram - w).norm() > 1e-9 * std::max(1.0, w.norm()))
    throw Error("conjugate: u does not preserve the inner product");
  UnitaryRep out = rep;
  for (auto& m : out.matrices) m = u * m * u.adjoint();
  return out;
}

TilingData make_tiling(const GroupAction& a, std::vector<int> tile) {
  validate_action(a);
  const int ng = a.group->order, nx = a.set_size;
  if (tile.empty()) throw Error("tiling: empty tile");
  if (static_cast<int>(tile.size()) * ng != nx)
    throw Error("non-tiling: |X| != |Gamma| * |C|");
  TilingData t;
  t.tile = std::move(tile);
  t.coset_map.assign(nx, {-1, -1});
  for (int c = 0; c < static_cast<int>(t.tile.size()); ++c) {
    const int x0 = t.tile[c];
    if (x0 < 0 || x0 >= nx) throw Error("tiling: tile point out of range");
    for (int gamma = 0; gamma < ng; ++gamma) {
      const int x = a.perm[gamma][x0];
      if (t.coset_map[x].first >= 0)
        throw Error("non-tiling: translates of the tile overlap");
      t.coset_map[x] = {gamma, c};
    }
  }
  for (const auto& [gamma, c] : t.coset_map)
    if (gamma < 0) throw Error("non-tiling: translates do not cover X");
  return t;
}

Eigen::MatrixXcd pinv(const Eigen::MatrixXcd& a, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  if (s.size() == 0) return a.adjoint();
  const double cut = std::max(rel_tol * s(0), 1e-14);
  Eigen::VectorXd sinv = Eigen::VectorXd::Zero(s.size());
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > cut) sinv(i) = 1.0 / s(i);
  return svd.matrixV() * sinv.asDiagonal() * svd.matrixU().adjoint();
}

Eigen::MatrixXcd span_basis(const UnitaryRep& rep, const Eigen::MatrixXcd& cols,
                            double rel_tol) {
  const Eigen::VectorXcd wsqrt =
      rep.measure.cwiseSqrt().cast<std::complex<double>>();
  const Eigen::MatrixXcd scaled = wsqrt.asDiagonal() * cols;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(scaled, Eigen::ComputeThinU);
  const Eigen::VectorXd s = svd.singularValues();
  int rank = 0;
  if (s.size() > 0) {
    const double cut = std::max(rel_tol * s(0), 1e-14);
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > cut) ++rank;
  }
  const Eigen::MatrixXcd u = svd.matrixU().leftCols(rank);
  return wsqrt.cwiseInverse().asDiagonal() * u;
}

Eigen::MatrixXcd span_projector(const UnitaryRep& rep,
                                const Eigen::MatrixXcd& cols, double rel_tol) {
  const Eigen::MatrixXcd q = span_basis(rep, cols, rel_tol);
  const Eigen::MatrixXcd w =
      rep.measure.cast<std::complex<double>>().asDiagonal();
  return q * (q.adjoint() * w);
}

Eigen::MatrixXcd weighted_pinv(const UnitaryRep& rep, const Eigen::MatrixXcd& a,
                               double rel_tol) {
  const Eigen::VectorXcd winvsqrt =
      rep.measure.cwiseSqrt().cwiseInverse().cast<std::complex<double>>();
  const Eigen::MatrixXcd scaled = a * winvsqrt.asDiagonal();
  return winvsqrt.asDiagonal() * pinv(scaled, rel_tol);
}

}  // namespace vnframes
