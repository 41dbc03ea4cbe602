// vnframes/vn_algebra.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "vnframes/vn_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vnframes {

namespace {

void require_same_group(const VnOperator& f, const VnOperator& g) {
  if (!same_group(f.group, g.group))
    throw Error("operator group mismatch");
}

void require_valid(const VnOperator& f) {
  if (!f.group) throw Error("operator has no group");
  if (f.coeffs.size() != f.group->order)
    throw Error("coefficient vector does not match group order");
}

}  // namespace

VnOperator vn_zero(const GroupPtr& g) {
  return {g, Eigen::VectorXcd::Zero(g->order)};
}

VnOperator vn_identity(const GroupPtr& g) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(g->order);
  c(g->identity) = 1.0;
  return {g, std::move(c)};
}

VnOperator vn_delta(const GroupPtr& g, int gamma) {
  if (gamma < 0 || gamma >= g->order) throw Error("element index out of range");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(g->order);
  c(gamma) = 1.0;
  return {g, std::move(c)};
}

VnOperator make_vn(const GroupPtr& g, Eigen::VectorXcd coeffs) {
  VnOperator f{g, std::move(coeffs)};
  require_valid(f);
  return f;
}

Eigen::MatrixXcd to_matrix(const VnOperator& f) {
  require_valid(f);
  const FiniteGroup& g = *f.group;
  const int n = g.order;
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j) {
    const int ji = g.inv(j);
    for (int i = 0; i < n; ++i) m(i, j) = f.coeffs(g.mul(ji, i));
  }
  return m;
}

VnOperator coefficients_unchecked(const Eigen::MatrixXcd& m,
                                  const GroupPtr& g) {
  const int n = g->order;
  Eigen::VectorXcd c(n);
  for (int gamma = 0; gamma < n; ++gamma)
    c(gamma) = m(g->identity, g->inv(gamma));
  return {g, std::move(c)};
}

VnOperator fourier_coefficients(const Eigen::MatrixXcd& m, const GroupPtr& g,
                                double tol) {
  const int n = g->order;
  if (m.rows() != n || m.cols() != n)
    throw Error("matrix size does not match group order");
  // Affiliation: M must commute with the whole left regular representation.
  const double scale = std::max(1.0, m.norm());
  for (int gamma = 0; gamma < n; ++gamma) {
    double defect2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const int gj = g->mul(gamma, j);
      for (int i = 0; i < n; ++i) {
        // (M lambda - lambda M)(i, j) = M(i, gamma j) - M(gamma^-1 i, j)
        const std::complex<double> d =
            m(i, gj) - m(g->mul(g->inv(gamma), i), j);
        defect2 += std::norm(d);
      }
    }
    if (std::sqrt(defect2) > tol * scale)
      throw Error("not-affiliated: matrix does not commute with lambda");
  }
  return coefficients_unchecked(m, g);
}

std::complex<double> trace(const VnOperator& f) {
  require_valid(f);
  return f.coeffs(f.group->identity);
}

double p_norm(const VnOperator& f, double p) {
  require_valid(f);
  if (p < 1.0) throw Error("p_norm needs p >= 1");
  const Eigen::MatrixXcd m = to_matrix(f);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  if (std::isinf(p)) return s.size() ? s(0) : 0.0;
  const int n = f.group->order;
  double acc = 0.0;
  for (int i = 0; i < s.size(); ++i) acc += std::pow(s(i), p);
  return std::pow(acc / n, 1.0 / p);
}

VnOperator adjoint(const VnOperator& f) {
  require_valid(f);
  const FiniteGroup& g = *f.group;
  Eigen::VectorXcd c(g.order);
  for (int gamma = 0; gamma < g.order; ++gamma)
    c(gamma) = std::conj(f.coeffs(g.inv(gamma)));
  return {f.group, std::move(c)};
}

VnOperator multiply(const VnOperator& f, const VnOperator& g) {
  require_valid(f);
  require_valid(g);
  require_same_group(f, g);
  const FiniteGroup& grp = *f.group;
  const int n = grp.order;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
  // (F G)^(gamma) = sum_b G^(b) F^(b^-1 gamma), from rho(a)* rho(b)* = rho(ba)*.
  for (int b = 0; b < n; ++b) {
    const std::complex<double> gb = g.coeffs(b);
    if (gb == std::complex<double>(0.0, 0.0)) continue;
    const int bi = grp.inv(b);
    for (int gamma = 0; gamma < n; ++gamma)
      c(gamma) += gb * f.coeffs(grp.mul(bi, gamma));
  }
  return {f.group, std::move(c)};
}

VnOperator add(const VnOperator& f, const VnOperator& g) {
  require_valid(f);
  require_valid(g);
  require_same_group(f, g);
  return {f.group, f.coeffs + g.coeffs};
}

VnOperator sub(const VnOperator& f, const VnOperator& g) {
  require_valid(f);
  require_valid(g);
  require_same_group(f, g);
  return {f.group, f.coeffs - g.coeffs};
}

VnOperator scale(const VnOperator& f, std::complex<double> alpha) {
  require_valid(f);
  return {f.group, alpha * f.coeffs};
}

VnOperator left_mul_rho(int gamma, const VnOperator& f) {
  require_valid(f);
  const FiniteGroup& g = *f.group;
  Eigen::VectorXcd c(g.order);
  // (rho(g0) F)^(gamma') = F^(gamma' g0)
  for (int gp = 0; gp < g.order; ++gp) c(gp) = f.coeffs(g.mul(gp, gamma));
  return {f.group, std::move(c)};
}

VnOperator right_mul_rho_star(const VnOperator& f, int gamma) {
  require_valid(f);
  const FiniteGroup& g = *f.group;
  Eigen::VectorXcd c(g.order);
  // (F rho(g0)^*)^(gamma') = F^(g0^-1 gamma')
  const int gi = g.inv(gamma);
  for (int gp = 0; gp < g.order; ++gp) c(gp) = f.coeffs(g.mul(gi, gp));
  return {f.group, std::move(c)};
}

double default_rank_tol(const Eigen::VectorXd& eigenvalues) {
  const double top = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  if (top < 1e-14) return 1e-14;
  return 1e-10 * top;
}

SpectralData spectral(const VnOperator& f, double selfadjoint_tol) {
  require_valid(f);
  const Eigen::MatrixXcd m = to_matrix(f);
  const Eigen::MatrixXcd skew = 0.5 * (m - m.adjoint());
  const double skew_norm = skew.norm();
  if (skew_norm > selfadjoint_tol * std::max(1.0, m.norm()))
    throw Error("operator is not self-adjoint within tolerance");
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  SpectralData out;
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  out.rank_tol = default_rank_tol(out.eigenvalues);
  out.skew_norm = skew_norm;
  // Phase convention: first component of modulus > 1e-12 made real positive.
  for (int j = 0; j < out.eigenvectors.cols(); ++j) {
    for (int i = 0; i < out.eigenvectors.rows(); ++i) {
      const std::complex<double> v = out.eigenvectors(i, j);
      const double a = std::abs(v);
      if (a > 1e-12) {
        out.eigenvectors.col(j) *= std::conj(v) / a;
        break;
      }
    }
  }
  return out;
}

VnOperator support_projection(const VnOperator& f) {
  const SpectralData sd = spectral(f);
  const int n = sd.eigenvalues.size();
  Eigen::VectorXd mask(n);
  for (int i = 0; i < n; ++i)
    mask(i) = std::abs(sd.eigenvalues(i)) > sd.rank_tol ? 1.0 : 0.0;
  const Eigen::MatrixXcd p = sd.eigenvectors * mask.asDiagonal() *
                             sd.eigenvectors.adjoint();
  return coefficients_unchecked(p, f.group);
}

VnOperator apply_function(const VnOperator& f,
                          const std::function<double(double)>& fn,
                          bool on_support_only) {
  const SpectralData sd = spectral(f);
  const int n = sd.eigenvalues.size();
  Eigen::VectorXd vals(n);
  for (int i = 0; i < n; ++i) {
    const double lambda = sd.eigenvalues(i);
    if (on_support_only && std::abs(lambda) <= sd.rank_tol) {
      vals(i) = 0.0;
      continue;
    }
    const double y = fn(lambda);
    if (!std::isfinite(y))
      throw Error("apply_function: fn undefined at eigenvalue " +
                  std::to_string(lambda));
    vals(i) = y;
  }
  const Eigen::MatrixXcd m = sd.eigenvectors * vals.asDiagonal() *
                             sd.eigenvectors.adjoint();
  return coefficients_unchecked(m, f.group);
}

namespace {

// Refines an orthonormal block basis into the joint eigenbasis of a
// commuting family of Hermitian matrices.
void refine_blocks(std::vector<Eigen::MatrixXcd>& blocks,
                   const Eigen::MatrixXcd& h) {
  std::vector<Eigen::MatrixXcd> next;
  for (const Eigen::MatrixXcd& q : blocks) {
    if (q.cols() == 1) {
      next.push_back(q);
      continue;
    }
    const Eigen::MatrixXcd b = q.adjoint() * h * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 *
                                                       (b + b.adjoint()));
    const Eigen::VectorXd ev = es.eigenvalues();
    const Eigen::MatrixXcd v = es.eigenvectors();
    int start = 0;
    for (int i = 1; i <= ev.size(); ++i) {
      if (i == ev.size() || ev(i) - ev(start) > 1e-8) {
        next.push_back(q * v.middleCols(start, i - start));
        start = i;
      }
    }
  }
  blocks = std::move(next);
}

}  // namespace

std::vector<Eigen::VectorXcd> characters(const FiniteGroup& g) {
  if (!g.abelian) throw Error("characters: group is not abelian");
  const int n = g.order;
  auto [rho, lambda] = regular_representations(g);
  (void)lambda;
  std::vector<Eigen::MatrixXcd> blocks{Eigen::MatrixXcd::Identity(n, n)};
  for (int gamma = 0; gamma < n; ++gamma) {
    const Eigen::MatrixXcd& r = rho[gamma];
    refine_blocks(blocks, 0.5 * (r + r.adjoint()));
    const std::complex<double> im(0.0, 1.0);
    refine_blocks(blocks, (r - r.adjoint()) * (-0.5 * im));
    bool done = true;
    for (const auto& b : blocks) done = done && b.cols() == 1;
    if (done) break;
  }
  std::vector<Eigen::VectorXcd> chars;
  chars.reserve(n);
  for (const auto& b : blocks) {
    if (b.cols() != 1)
      throw Error("characters: joint diagonalization did not separate");
    const Eigen::VectorXcd q = b.col(0);
    Eigen::VectorXcd chi(n);
    for (int gamma = 0; gamma < n; ++gamma)
      chi(gamma) = q.dot(rho[gamma] * q);  // q^* rho q, |q| = 1
    // Normalize so chi(e) = 1 (it already is, up to roundoff).
    chi /= chi(g.identity);
    chars.push_back(std::move(chi));
  }
  auto key = [](const Eigen::VectorXcd& chi) {
    std::vector<std::pair<long long, long long>> k(chi.size());
    for (int i = 0; i < chi.size(); ++i)
      k[i] = {static_cast<long long>(std::llround(chi(i).real() * 1e9)),
              static_cast<long long>(std::llround(chi(i).imag() * 1e9))};
    return k;
  };
  std::sort(chars.begin(), chars.end(),
            [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
              return key(a) < key(b);
            });
  return chars;
}

Eigen::VectorXcd pontryagin_eigenvalues(const VnOperator& f) {
  require_valid(f);
  if (!f.group->abelian)
    throw Error("pontryagin_eigenvalues: group is not abelian");
  const FiniteGroup& g = *f.group;
  const auto chars = characters(g);
  Eigen::VectorXcd vals(g.order);
  for (size_t k = 0; k < chars.size(); ++k) {
    std::complex<double> acc = 0.0;
    for (int gamma = 0; gamma < g.order; ++gamma)
      acc += f.coeffs(gamma) * chars[k](g.inv(gamma));
    vals(static_cast<int>(k)) = acc;
  }
  return vals;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace vnframes
