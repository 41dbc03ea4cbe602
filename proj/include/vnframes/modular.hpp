// vnframes/modular.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef VNFRAMES_MODULAR_HPP
#define VNFRAMES_MODULAR_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vnframes/helson.hpp"

namespace vnframes {

/// System of module generators Phi_j = T[phi_j] inside the image of a
/// Helson map, together with the bracket blocks {Phi_k, Phi_j}_K and the
/// big block matrix that is the symbol of the modular Gram operator on
/// l_2(I) (x) l_2(Gamma).
struct ModularSystem {
  HelsonMap map;
  std::vector<Eigen::VectorXcd> gen_vectors;
  std::vector<HelsonImage> generators;
  std::vector<std::vector<VnOperator>> bracket_block;  // (j,k) = {Phi_k,Phi_j}
  Eigen::MatrixXcd big_matrix;
  double hermiticity_defect = 0.0;
};

enum class ModularClass {
  modular_riesz,
  modular_frame_not_riesz,
  degenerate,
};

const char* modular_class_name(ModularClass c);

struct ModularReport {
  ModularClass classification = ModularClass::degenerate;
  double lower = 0.0;
  double upper = 0.0;
  int kernel_dim = 0;
  Eigen::VectorXd spectrum;
};

/// {a, b}_K = sum_x nu(x) b(x)^* a(x); requires both images to lie in the
/// range of the map (equals [T^-1 a, T^-1 b] there).
VnOperator modular_inner(const HelsonMap& map, const HelsonImage& a,
                         const HelsonImage& b);

ModularSystem make_modular_system(const HelsonMap& map,
                                  const std::vector<Eigen::VectorXcd>& gens);

/// T_j = sum_k |{Phi_j, Phi_k}|^2, the modular square-integrability
/// operators (always trace class at finite scale).
std::vector<VnOperator> modular_square_integrability(const ModularSystem& sys);

ModularReport modular_classify(const ModularSystem& sys);

/// Modular frame operator F Psi = sum_j Phi_j {Psi, Phi_j}.
HelsonImage modular_frame_operator(const ModularSystem& sys,
                                   const HelsonImage& target);

/// Matrix of the modular frame operator on stacked fiber coordinates.
Eigen::MatrixXcd modular_frame_matrix(const ModularSystem& sys);

/// Canonical modular dual Phi_j^o = F^-1 Phi_j (spectral pseudo-inverse
/// on the module). Throws for degenerate systems.
std::vector<HelsonImage> canonical_dual(const ModularSystem& sys);

struct ReproduceResult {
  double residual_dual_coefficients = 0.0;  // Psi = sum Phi_j {Psi, Phi_j^o}
  double residual_dual_frame = 0.0;         // Psi = sum Phi_j^o {Psi, Phi_j}
  double projection_residual = 0.0;         // distance of probe from X_Phi
};

ReproduceResult reproduce_check(const ModularSystem& sys,
                                const std::vector<HelsonImage>& dual,
                                const HelsonImage& probe);

struct MainTheoremRecord {
  FrameReport classical;
  ModularReport modular;
  bool classifications_match = false;
  double lower_defect = 0.0;
  double upper_defect = 0.0;
  double trace_sandwich_defect = 0.0;
  bool pass = false;
};

/// Runs the classical classification of E = {Pi(gamma) phi_j} against the
/// modular classification of Phi = {T[phi_j]} and checks the trace
/// inequalities A tau([f,f]) <= sum_j tau(|[f,phi_j]|^2) <= B tau([f,f])
/// on random f in span E.
MainTheoremRecord main_theorem_check(const HelsonMap& map,
                                     const std::vector<Eigen::VectorXcd>& gens,
                                     int trials, std::uint64_t seed,
                                     double rel_tol = 1e-9);

/// Distance of (T v) A from M = T(V) for one specific pair.
double multiplicative_defect(const HelsonMap& map,
                             const std::vector<Eigen::VectorXcd>& v_basis,
                             const Eigen::VectorXcd& v_in_span,
                             const VnOperator& a);

/// Max distance over random A in R(Gamma) and random m in T(V).
double multiplicative_invariance_check(
    const HelsonMap& map, const std::vector<Eigen::VectorXcd>& v_basis,
    int trials, std::uint64_t seed);

struct SpanCheck {
  bool pass = false;
  int rank_tv = 0;        // rank of T(span E)
  int rank_modular = 0;   // rank of span_{R(Gamma)} {Phi_j}
  int rank_outer = 0;     // after appending supported outer coefficients
  double residual = 0.0;  // mutual projection residual
};

/// T[V] = closed modular span of {Phi_j}: compared as column spaces, with
/// the outer-coefficient columns not increasing the rank.
SpanCheck generator_span_check(const HelsonMap& map,
                               const std::vector<Eigen::VectorXcd>& gens,
                               std::uint64_t seed);

}  // namespace vnframes

#endif  // VNFRAMES_MODULAR_HPP
