// vnframes/bracket.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "vnframes/bracket.hpp"

#include <algorithm>
#include <cmath>

#include "vnframes/error.hpp"
#include "vnframes/rng.hpp"

namespace vnframes {

const char* frame_class_name(FrameClass c) {
  switch (c) {
    case FrameClass::riesz_basis_sequence: return "riesz_basis_sequence";
    case FrameClass::frame_sequence_not_riesz: return "frame_sequence_not_riesz";
    case FrameClass::bessel_only_degenerate: return "bessel_only_degenerate";
    default: return "invalid";
  }
}

VnOperator bracket(const UnitaryRep& rep, const Eigen::VectorXcd& phi,
                   const Eigen::VectorXcd& psi) {
  if (phi.size() != rep.dim || psi.size() != rep.dim)
    throw Error("bracket: vector dimension mismatch");
  const int ng = rep.group->order;
  Eigen::VectorXcd c(ng);
  for (int gamma = 0; gamma < ng; ++gamma)
    c(gamma) = inner(rep, phi, rep.pi(gamma) * psi);
  return {rep.group, std::move(c)};
}

double BracketDiagnostics::max_defect() const {
  return std::max({adjoint_defect, covariance_left, covariance_right,
                   positivity_defect, norm_identity_defect});
}

BracketDiagnostics verify_bracket_properties(const UnitaryRep& rep, int trials,
                                             std::uint64_t seed) {
  if (trials < 1) throw Error("verify_bracket_properties: trials must be >= 1");
  rng::Stream stream(seed);
  BracketDiagnostics d;
  const int ng = rep.group->order;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXcd a = stream.cgaussian_vector(rep.dim);
    Eigen::VectorXcd b = stream.cgaussian_vector(rep.dim);
    const double na = norm(rep, a), nb = norm(rep, b);
    if (na > 0) a /= na;
    if (nb > 0) b /= nb;
    const int gamma = stream.uniform_int(0, ng - 1);

    const VnOperator bab = bracket(rep, a, b);
    const VnOperator bba = bracket(rep, b, a);
    d.adjoint_defect = std::max(
        d.adjoint_defect, (adjoint(bab).coeffs - bba.coeffs).norm());

    const VnOperator lhs_l = bracket(rep, a, rep.pi(gamma) * b);
    d.covariance_left = std::max(
        d.covariance_left,
        (lhs_l.coeffs - left_mul_rho(gamma, bab).coeffs).norm());

    const VnOperator lhs_r = bracket(rep, rep.pi(gamma) * a, b);
    d.covariance_right = std::max(
        d.covariance_right,
        (lhs_r.coeffs - right_mul_rho_star(bab, gamma).coeffs).norm());

    const VnOperator baa = bracket(rep, a, a);
    const SpectralData sd = spectral(baa);
    const double lambda_min =
        sd.eigenvalues.size() ? sd.eigenvalues.minCoeff() : 0.0;
    d.positivity_defect = std::max(d.positivity_defect, std::max(0.0, -lambda_min));
    d.norm_identity_defect = std::max(
        d.norm_identity_defect,
        std::abs(p_norm(baa, 1.0) - inner(rep, a, a).real()));
  }
  return d;
}

Eigen::MatrixXcd synthesis_matrix(const OrbitSystem& sys) {
  if (sys.generators.empty()) throw Error("orbit system has no generators");
  const int ng = sys.rep.group->order;
  const int nj = static_cast<int>(sys.generators.size());
  Eigen::MatrixXcd t(sys.rep.dim, nj * ng);
  for (int j = 0; j < nj; ++j) {
    if (sys.generators[j].size() != sys.rep.dim)
      throw Error("generator dimension mismatch");
    for (int gamma = 0; gamma < ng; ++gamma)
      t.col(j * ng + gamma) = sys.rep.pi(gamma) * sys.generators[j];
  }
  return t;
}

namespace {

Eigen::MatrixXcd effective_synthesis(const OrbitSystem& sys) {
  const Eigen::VectorXcd wsqrt =
      sys.rep.measure.cwiseSqrt().cast<std::complex<double>>();
  return wsqrt.asDiagonal() * synthesis_matrix(sys);
}

}  // namespace

Eigen::MatrixXcd gram_matrix(const OrbitSystem& sys) {
  const Eigen::MatrixXcd t = effective_synthesis(sys);
  return t.adjoint() * t;
}

Eigen::MatrixXcd frame_operator(const OrbitSystem& sys) {
  const Eigen::MatrixXcd t = effective_synthesis(sys);
  return t * t.adjoint();
}

Eigen::VectorXd square_integrability_diagnostic(const OrbitSystem& sys) {
  const Eigen::MatrixXcd g = gram_matrix(sys);
  return g.cwiseAbs2().rowwise().sum();
}

FrameReport classify_hermitian(const Eigen::MatrixXcd& m, bool all_zero) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  FrameReport rep;
  rep.spectrum = es.eigenvalues();
  const double cut = default_rank_tol(rep.spectrum);
  const int n = rep.spectrum.size();
  int kernel = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(rep.spectrum(i)) <= cut) ++kernel;
  rep.kernel_dim = kernel;
  if (all_zero || kernel == n) {
    rep.classification = FrameClass::bessel_only_degenerate;
    rep.lower = rep.upper = 0.0;
    return rep;
  }
  rep.lower = rep.spectrum(kernel);  // ascending order: first non-kernel
  rep.upper = rep.spectrum(n - 1);
  rep.classification = kernel == 0 ? FrameClass::riesz_basis_sequence
                                   : FrameClass::frame_sequence_not_riesz;
  rep.witnesses.resize(es.eigenvectors().rows(), 2);
  rep.witnesses.col(0) = es.eigenvectors().col(kernel);
  rep.witnesses.col(1) = es.eigenvectors().col(n - 1);
  return rep;
}

FrameReport classify(const OrbitSystem& sys) {
  bool all_zero = true;
  for (const auto& psi : sys.generators)
    all_zero = all_zero && psi.norm() == 0.0;
  return classify_hermitian(gram_matrix(sys), all_zero);
}

double bracket_equals_gram_check(const UnitaryRep& rep,
                                 const Eigen::VectorXcd& psi) {
  const Eigen::MatrixXcd mb = to_matrix(bracket(rep, psi, psi));
  const Eigen::MatrixXcd g = gram_matrix(OrbitSystem{rep, {psi}});
  return spectral_norm(mb - g) / std::max(1.0, spectral_norm(g));
}

FrameReport principal_characterization(const UnitaryRep& rep,
                                       const Eigen::VectorXcd& psi) {
  if (norm(rep, psi) == 0.0)
    throw Error("principal_characterization: zero generator");
  return classify_hermitian(to_matrix(bracket(rep, psi, psi)), false);
}

RankData rank_consistency(const OrbitSystem& sys) {
  RankData out;
  const Eigen::MatrixXcd g = gram_matrix(sys);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + g.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cut = default_rank_tol(ev);
  for (int i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > cut) ++out.gram_rank;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(effective_synthesis(sys));
  const Eigen::VectorXd s = svd.singularValues();
  if (s.size() > 0) {
    const double scut = std::max(1e-10 * s(0), 1e-14);
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > scut) ++out.synthesis_rank;
  }
  out.consistent = out.gram_rank == out.synthesis_rank;
  return out;
}

}  // namespace vnframes
