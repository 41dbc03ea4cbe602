// vnframes/representation.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef VNFRAMES_REPRESENTATION_HPP
#define VNFRAMES_REPRESENTATION_HPP

#include <vector>

#include <Eigen/Dense>

#include "vnframes/group.hpp"

namespace vnframes {

/// Unitary representation Pi of a finite group on C^dim.
///
/// `measure` holds the weights of the inner product of the underlying
/// Hilbert space (all ones for ordinary representations). Representations
/// built from measurable group actions with a nontrivial Jacobian are
/// unitary with respect to this weighted product, exactly as they are
/// unitary on L^2(X, mu) rather than on plain coordinates.
struct UnitaryRep {
  GroupPtr group;
  int dim = 0;
  std::vector<Eigen::MatrixXcd> matrices;
  Eigen::VectorXd measure;

  const Eigen::MatrixXcd& pi(int gamma) const { return matrices[gamma]; }
  bool weighted() const;
};

/// <a, b> = sum_i measure_i a_i conj(b_i); linear in the first argument.
std::complex<double> inner(const UnitaryRep& rep, const Eigen::VectorXcd& a,
                           const Eigen::VectorXcd& b);
double norm(const UnitaryRep& rep, const Eigen::VectorXcd& a);

struct RepDiagnostics {
  double unitarity_defect = 0.0;
  double homomorphism_defect = 0.0;
  double identity_defect = 0.0;
  double max_defect() const;
};

/// Report-only validation: unitarity is measured against the
/// representation's inner product, ||Pi^* W Pi - W|| / ||W||.
RepDiagnostics validate(const UnitaryRep& rep);

/// Pi = lambda, the left regular representation on l_2(Gamma).
UnitaryRep translation_rep(const GroupPtr& g);

/// Quasi-invariant measurable action of Gamma on a finite set:
/// permutations per element plus the positive Jacobian table J(gamma, x),
/// subject to the cocycle law J(g g', x) = J(g, perm(g')(x)) J(g', x).
struct GroupAction {
  GroupPtr group;
  int set_size = 0;
  std::vector<std::vector<int>> perm;  // perm[gamma][x]
  Eigen::MatrixXd jacobian;            // J(gamma, x), |Gamma| x |X|

  int apply(int gamma, int x) const { return perm[gamma][x]; }
};

/// Checks the action law exactly and the cocycle within tol; throws on
/// violation.
void validate_action(const GroupAction& a, double tol = 1e-10);

/// The discrete measure determined by the Jacobian, normalized to 1 on
/// the given anchor points (one per orbit; defaults to the minimal index
/// of each orbit). Throws invalid-action when J is inconsistent.
Eigen::VectorXd action_measure(const GroupAction& a,
                               const std::vector<int>* anchors = nullptr);

/// Pi_sigma(gamma) phi(x) = J(gamma^-1, x)^(1/2) phi(sigma_{gamma^-1}(x)),
/// carried on C^|X| with the measure-weighted inner product.
UnitaryRep action_rep(const GroupAction& a);
UnitaryRep action_rep_anchored(const GroupAction& a,
                               const std::vector<int>& anchors);

UnitaryRep direct_sum(const std::vector<UnitaryRep>& reps);

/// Pi'(gamma) = u Pi(gamma) u^*. u must be unitary and, for weighted
/// representations, must preserve the weighted form.
UnitaryRep conjugate(const UnitaryRep& rep, const Eigen::MatrixXcd& u);

/// Transversal of a tiling action: the translates {sigma_gamma(C)} must
/// partition X; coset_map sends x to the unique (gamma, tile index).
struct TilingData {
  std::vector<int> tile;
  std::vector<std::pair<int, int>> coset_map;
};

TilingData make_tiling(const GroupAction& a, std::vector<int> tile);

// Weighted-geometry helpers shared by the isometry constructions.

/// Orthonormal basis (w.r.t. the rep's inner product) of the column span
/// of `cols`, with rank decided by `rel_tol` on the singular values.
Eigen::MatrixXcd span_basis(const UnitaryRep& rep, const Eigen::MatrixXcd& cols,
                            double rel_tol = 1e-11);

/// Orthogonal projector (w.r.t. the rep's inner product) onto span(cols).
Eigen::MatrixXcd span_projector(const UnitaryRep& rep,
                                const Eigen::MatrixXcd& cols,
                                double rel_tol = 1e-11);

/// Minimal-weighted-norm pseudoinverse of a map A : (C^n, w) -> C^m.
Eigen::MatrixXcd weighted_pinv(const UnitaryRep& rep, const Eigen::MatrixXcd& a,
                               double rel_tol = 1e-11);

/// Plain pseudoinverse with relative singular-value cutoff.
Eigen::MatrixXcd pinv(const Eigen::MatrixXcd& a, double rel_tol = 1e-11);

}  // namespace vnframes

#endif  // VNFRAMES_REPRESENTATION_HPP
