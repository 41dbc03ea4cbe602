// vnframes/helson.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef VNFRAMES_HELSON_HPP
#define VNFRAMES_HELSON_HPP

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "vnframes/bracket.hpp"
#include "vnframes/representation.hpp"
#include "vnframes/vn_algebra.hpp"

namespace vnframes {

/// Weighted L^2 space over the algebra: weight Omega (PSD), its square
/// root and its support projection. ||F||_{2,Omega} = ||Omega^(1/2) F||_2.
struct WeightedSpace {
  VnOperator weight;
  VnOperator root;
  VnOperator support;
};

WeightedSpace make_weighted_space(const VnOperator& omega);
double weighted_norm(const VnOperator& f, const WeightedSpace& w);
/// F -> Omega^(1/2) F, the isomorphism onto the supported subspace.
VnOperator weight_embedding(const VnOperator& f, const WeightedSpace& w);

/// Element of L^2((M,nu), L^2(R(Gamma))): one operator fiber per base
/// point of the finite measure space M.
struct HelsonImage {
  std::vector<int> base_points;
  Eigen::VectorXd weights;  // nu(x)
  std::vector<VnOperator> fibers;
};

/// An isometry T : H -> L^2((M,nu), L^2(R(Gamma))) intertwining Pi(gamma)
/// with fiberwise right composition by rho(gamma)^*, realized as explicit
/// matrices on stacked fiber coordinates (coefficient vectors scaled by
/// sqrt(nu), so the stacked Euclidean norm is the space norm).
///
/// `forward` vanishes on the orthocomplement of the domain subspace;
/// `inverse` is T^-1 on the range and vanishes on its orthocomplement.
struct HelsonMap {
  enum class Kind { principal, global, zak };
  Kind kind = Kind::principal;
  UnitaryRep rep;
  std::vector<int> base_points;
  Eigen::VectorXd nu;
  Eigen::MatrixXcd forward;
  Eigen::MatrixXcd inverse;
  Eigen::MatrixXcd domain_proj;  // weighted-orthogonal projector in C^n
  Eigen::MatrixXcd range_proj;   // plain projector onto Ran(forward)
  std::vector<Eigen::VectorXcd> generators;  // principal/global metadata
  std::vector<VnOperator> fiber_supports;    // s_{[psi_i, psi_i]} per fiber
  std::shared_ptr<const GroupAction> action; // zak metadata
  std::shared_ptr<const TilingData> tiling;

  int fiber_count() const { return static_cast<int>(base_points.size()); }
  int stacked_dim() const { return fiber_count() * rep.group->order; }
};

HelsonImage helson_apply(const HelsonMap& map, const Eigen::VectorXcd& v);
Eigen::VectorXcd helson_invert(const HelsonMap& map, const HelsonImage& img);
Eigen::VectorXcd helson_stack(const HelsonMap& map, const HelsonImage& img);
HelsonImage helson_unstack(const HelsonMap& map, const Eigen::VectorXcd& s);

/// Fiberwise right composition (Psi F)(x) = Psi(x) F.
HelsonImage right_compose(const HelsonImage& img, const VnOperator& f);

/// U_psi = [psi,psi]^(1/2) S_psi on the cyclic space <psi>; the image
/// lives in s_{[psi,psi]} L^2(R(Gamma)) with the unweighted norm.
HelsonMap principal_map(const UnitaryRep& rep, const Eigen::VectorXcd& psi);

/// Decomposes the Pi-invariant span of `basis` into orthogonal cyclic
/// subspaces following the constructive order of the input basis.
/// Zero projections are recorded in place (zero vectors), so indices are
/// stable; consumers skip them.
std::vector<Eigen::VectorXcd> orthogonal_generators(
    const UnitaryRep& rep, const std::vector<Eigen::VectorXcd>& basis);

/// U_Psi : phi -> {U_{psi_i}[P_{<psi_i>} phi]}_i. When `orthogonalize` is
/// set the generators are first produced by orthogonal_generators;
/// otherwise the given family must already have mutually orthogonal
/// orbits.
HelsonMap global_map(const UnitaryRep& rep,
                     const std::vector<Eigen::VectorXcd>& generators,
                     bool orthogonalize = false);

/// Noncommutative Zak transform of a tiling action. Bijective onto
/// L^2((C,nu), L^2(R(Gamma))); the inverse implements the explicit
/// inversion formula with the Jacobian factors.
HelsonMap zak_map(const GroupAction& action, const TilingData& tiling);

/// P_F psi = sum_gamma F^(gamma) Pi(gamma) psi.
Eigen::VectorXcd operator_shift(const UnitaryRep& rep, const VnOperator& f,
                                const Eigen::VectorXcd& psi);

/// || T[P_F phi] - T[phi] F || / max(1, ||T[phi] F||).
double intertwining_check(const HelsonMap& map, const VnOperator& f,
                          const Eigen::VectorXcd& phi);

struct BdrResult {
  bool in_span = false;
  VnOperator coefficient;
  double residual = 0.0;
};

/// Solves T[phi] = T[psi] F through F = pinv([psi,psi]) [phi,psi] and
/// accepts iff ||P_F psi - phi|| <= tol * ||phi||.
BdrResult bdr_coefficient(const UnitaryRep& rep, const Eigen::VectorXcd& phi,
                          const Eigen::VectorXcd& psi, double tol = 1e-10);

/// Finite form of [phi,psi] = integral of T[psi](x)^* T[phi](x) dnu.
VnOperator bracket_from_map(const HelsonMap& map, const HelsonImage& a,
                            const HelsonImage& b);

/// S_psi on a principal map: the pinv-square-root of [psi,psi] composed
/// with the U_psi fiber, i.e. the supported representative of the
/// coefficient operator of phi in <psi>.
VnOperator principal_s_apply(const HelsonMap& map,
                             const Eigen::VectorXcd& phi);

/// Gram-Schmidt against the representation's inner product, keeping the
/// input column order; rank-deficient columns are dropped.
Eigen::MatrixXcd gram_schmidt_w(const UnitaryRep& rep,
                                const Eigen::MatrixXcd& cols,
                                double rel_tol = 1e-11);

}  // namespace vnframes

#endif  // VNFRAMES_HELSON_HPP
