// vnframes/vn_algebra.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef VNFRAMES_VN_ALGEBRA_HPP
#define VNFRAMES_VN_ALGEBRA_HPP

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "vnframes/group.hpp"

namespace vnframes {

/// Element of the (finite-dimensional) right group von Neumann algebra,
/// stored by its Fourier coefficients in the basis {rho(gamma)^*}:
///
///   F = sum_gamma coeffs(gamma) rho(gamma)^* ,   coeffs(gamma) = tau(F rho(gamma)).
///
/// The trace is the normalized one, tau(F) = <F delta_e, delta_e>, so the
/// monomials {rho(gamma)} are an orthonormal basis of the L^2 space and
/// Plancherel reads ||F||_2^2 = sum |coeffs|^2. The matrix form is the
/// right-convolution operator F u = u * coeffs; it is materialized on
/// demand, coefficients are the canonical storage.
struct VnOperator {
  GroupPtr group;
  Eigen::VectorXcd coeffs;
};

/// Result of the Hermitian eigendecomposition of to_matrix(F).
/// Eigenvalues ascend; eigenvector phases are fixed (first component of
/// modulus above rank_tol made real positive) for reproducibility.
struct SpectralData {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  double rank_tol = 0.0;
  double skew_norm = 0.0;  // Frobenius norm of the discarded skew part
};

VnOperator vn_zero(const GroupPtr& g);
VnOperator vn_identity(const GroupPtr& g);
/// rho(gamma)^* as a coefficient vector (the delta at gamma).
VnOperator vn_delta(const GroupPtr& g, int gamma);
VnOperator make_vn(const GroupPtr& g, Eigen::VectorXcd coeffs);

/// Dense right-convolution matrix of F; commutes with every lambda(gamma).
Eigen::MatrixXcd to_matrix(const VnOperator& f);

/// Reads Fourier coefficients tau(M rho(gamma)) off a matrix that is
/// affiliated to the algebra; throws when the commutators with lambda
/// exceed tol (relative to ||M||).
VnOperator fourier_coefficients(const Eigen::MatrixXcd& m, const GroupPtr& g,
                                double tol = 1e-8);

/// Same extraction without the affiliation check, for internal use on
/// matrices that are affiliated by construction.
VnOperator coefficients_unchecked(const Eigen::MatrixXcd& m, const GroupPtr& g);

std::complex<double> trace(const VnOperator& f);

/// tau(|F|^p)^(1/p) for p in [1, inf); the operator norm for p = inf
/// (pass std::numeric_limits<double>::infinity()).
double p_norm(const VnOperator& f, double p);

VnOperator adjoint(const VnOperator& f);
VnOperator multiply(const VnOperator& f, const VnOperator& g);  // F G
VnOperator add(const VnOperator& f, const VnOperator& g);
VnOperator sub(const VnOperator& f, const VnOperator& g);
VnOperator scale(const VnOperator& f, std::complex<double> alpha);

/// Left multiplication by rho(gamma) and right multiplication by
/// rho(gamma)^*, both at coefficient level (pure index permutations).
VnOperator left_mul_rho(int gamma, const VnOperator& f);
VnOperator right_mul_rho_star(const VnOperator& f, int gamma);

/// Scale-invariant kernel threshold: 1e-10 * max|eigenvalue|, floored at
/// 1e-14 absolute when the spectrum is essentially zero.
double default_rank_tol(const Eigen::VectorXd& eigenvalues);

/// Eigendecomposition of a self-adjoint F. The input is Hermitized as
/// (M + M^*)/2 first; inputs whose skew part exceeds tol (relative) are
/// rejected.
SpectralData spectral(const VnOperator& f, double selfadjoint_tol = 1e-8);

/// Spectral projection onto the complement of the kernel,
/// s_F = P_{(Ker F)^perp}.
VnOperator support_projection(const VnOperator& f);

/// Functional calculus Q fn(Lambda) Q^* re-expressed as a VnOperator.
/// With on_support_only, eigenvalues below rank_tol map to 0 (needed for
/// pseudo-inverses). Throws if fn produces a non-finite value.
VnOperator apply_function(const VnOperator& f,
                          const std::function<double(double)>& fn,
                          bool on_support_only = false);

/// The |Gamma| characters of an abelian group, as unit-modulus vectors
/// indexed by group element, in a canonical sorted order.
std::vector<Eigen::VectorXcd> characters(const FiniteGroup& g);

/// Values sum_gamma coeffs(gamma) chi(gamma^-1) over all characters; the
/// multiset equals the spectrum of to_matrix(f). Abelian groups only.
Eigen::VectorXcd pontryagin_eigenvalues(const VnOperator& f);

/// Operator 2-norm (largest singular value).
double spectral_norm(const Eigen::MatrixXcd& m);

}  // namespace vnframes

#endif  // VNFRAMES_VN_ALGEBRA_HPP
