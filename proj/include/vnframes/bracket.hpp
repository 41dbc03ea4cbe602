// vnframes/bracket.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef VNFRAMES_BRACKET_HPP
#define VNFRAMES_BRACKET_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vnframes/representation.hpp"
#include "vnframes/vn_algebra.hpp"

namespace vnframes {

/// Orbit system E = {Pi(gamma) psi_j}, enumerated j-major then gamma:
/// system index (j, gamma) -> j * |Gamma| + gamma.
struct OrbitSystem {
  UnitaryRep rep;
  std::vector<Eigen::VectorXcd> generators;
};

enum class FrameClass {
  riesz_basis_sequence,
  frame_sequence_not_riesz,
  bessel_only_degenerate,
  invalid,
};

const char* frame_class_name(FrameClass c);

/// Spectral classification of an orbit system. lower/upper are the extreme
/// nonzero eigenvalues of the Gram matrix; kernel_dim counts eigenvalues
/// below the rank cut; witnesses holds the eigenvectors attaining the
/// bounds (column 0 for the lower bound, column 1 for the upper).
struct FrameReport {
  FrameClass classification = FrameClass::invalid;
  double lower = 0.0;
  double upper = 0.0;
  Eigen::VectorXd spectrum;
  int kernel_dim = 0;
  Eigen::MatrixXcd witnesses;
};

/// The bracket map [phi, psi]: the operator whose gamma-th Fourier
/// coefficient is <phi, Pi(gamma) psi>.
VnOperator bracket(const UnitaryRep& rep, const Eigen::VectorXcd& phi,
                   const Eigen::VectorXcd& psi);

struct BracketDiagnostics {
  double adjoint_defect = 0.0;       // [a,b]^* = [b,a]
  double covariance_left = 0.0;      // [a, Pi(g) b] = rho(g) [a,b]
  double covariance_right = 0.0;     // [Pi(g) a, b] = [a,b] rho(g)^*
  double positivity_defect = 0.0;    // min eig of [psi,psi] >= 0
  double norm_identity_defect = 0.0; // ||[psi,psi]||_1 = ||psi||^2
  double max_defect() const;
};

BracketDiagnostics verify_bracket_properties(const UnitaryRep& rep, int trials,
                                             std::uint64_t seed);

/// Columns Pi(gamma) psi_j in system order (an n x |I||Gamma| matrix).
Eigen::MatrixXcd synthesis_matrix(const OrbitSystem& sys);

/// Gram matrix with entry ((k,g'),(j,g)) = <Pi(g) psi_j, Pi(g') psi_k>.
Eigen::MatrixXcd gram_matrix(const OrbitSystem& sys);

/// Frame operator T T^sharp. For weighted representations this is the
/// Hermitian form W^(1/2) T T^* W^(1/2), which shares its spectrum with
/// the weighted-adjoint composition.
Eigen::MatrixXcd frame_operator(const OrbitSystem& sys);

/// t_r = sum_s |<e_r, e_s>|^2 over the full system rows; always finite
/// here, kept as the square-integrability diagnostic.
Eigen::VectorXd square_integrability_diagnostic(const OrbitSystem& sys);

FrameReport classify(const OrbitSystem& sys);

/// || to_matrix([psi,psi]) - Gram({psi}) ||_2 / max(1, ||Gram||_2); the
/// single-orbit Gram is itself a right-convolution matrix.
double bracket_equals_gram_check(const UnitaryRep& rep,
                                 const Eigen::VectorXcd& psi);

/// Frame bounds read off the nonzero spectrum of [psi,psi]; by the
/// principal characterization they must match classify({psi}).
FrameReport principal_characterization(const UnitaryRep& rep,
                                       const Eigen::VectorXcd& psi);

struct RankData {
  bool consistent = false;
  int gram_rank = 0;
  int synthesis_rank = 0;
};

RankData rank_consistency(const OrbitSystem& sys);

/// Classification from an already computed Hermitian PSD matrix; shared
/// by the classical and modular classifiers.
FrameReport classify_hermitian(const Eigen::MatrixXcd& m, bool all_zero);

}  // namespace vnframes

#endif  // VNFRAMES_BRACKET_HPP
