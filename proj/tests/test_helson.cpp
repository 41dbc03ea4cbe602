// Helson maps: principal and global isometries, the Zak transform,
// weighted spaces, the shift correspondence and the BDR coefficient.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cmath>

#include "vnframes/helson.hpp"
#include "vnframes/rng.hpp"
#include "vnframes/verify.hpp"

using namespace vnframes;

namespace {

Eigen::VectorXcd basis_vec(int dim, int i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(i) = 1.0;
  return v;
}

Eigen::VectorXcd vec2(std::complex<double> a, std::complex<double> b) {
  Eigen::VectorXcd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("weighted spaces") {
  const GroupPtr z2 = make_cyclic(2);
  rng::Stream st(41);
  const VnOperator f = make_vn(z2, st.cgaussian_vector(2));

  // Omega = I: the ordinary 2-norm
  const WeightedSpace wi = make_weighted_space(vn_identity(z2));
  CHECK(weighted_norm(f, wi) == doctest::Approx(p_norm(f, 2.0)));

  // Omega = 0: everything has weighted norm zero
  const WeightedSpace w0 = make_weighted_space(vn_zero(z2));
  CHECK(weighted_norm(f, w0) == doctest::Approx(0.0));

  // Omega = I + rho(1): tau(Omega) = 1, so ||Omega^(1/2) I||_2 = 1.
  const VnOperator omega = add(vn_identity(z2), vn_delta(z2, 1));
  const WeightedSpace w = make_weighted_space(omega);
  CHECK(weighted_norm(vn_identity(z2), w) == doctest::Approx(1.0));
  CHECK((multiply(w.root, w.root).coeffs - omega.coeffs).norm() <= 1e-13);
  CHECK((multiply(w.support, w.root).coeffs - w.root.coeffs).norm() <= 1e-13);

  // the embedding lands in the supported subspace with equal norm
  const VnOperator emb = weight_embedding(f, w);
  CHECK((multiply(w.support, emb).coeffs - emb.coeffs).norm() <= 1e-12);
  CHECK(p_norm(emb, 2.0) == doctest::Approx(weighted_norm(f, w)));

  // operators killed by the support embed to zero: N_Omega
  const VnOperator null_op = sub(vn_identity(z2), vn_delta(z2, 1));
  CHECK((multiply(w.support, null_op).coeffs).norm() <= 1e-13);
  CHECK(weight_embedding(null_op, w).coeffs.norm() <= 1e-13);

  // a weight with a genuinely negative eigenvalue is rejected
  CHECK_THROWS_AS(make_weighted_space(scale(vn_identity(z2), -1.0)), Error);
}

TEST_CASE("principal map on an orthonormal orbit") {
  // psi = delta_e under lambda: [psi,psi] = I and U_psi = S_psi sends
  // Pi(gamma) psi to rho(gamma)^*.
  const GroupPtr d3 = make_dihedral(3);
  const UnitaryRep lam = translation_rep(d3);
  const Eigen::VectorXcd psi = basis_vec(6, d3->identity);
  const HelsonMap map = principal_map(lam, psi);

  CHECK((to_matrix(map.fiber_supports[0]) -
         Eigen::MatrixXcd::Identity(6, 6)).norm() <= 1e-12);
  for (int gamma = 0; gamma < 6; ++gamma) {
    const HelsonImage img = helson_apply(map, lam.pi(gamma) * psi);
    CHECK((img.fibers[0].coeffs - vn_delta(d3, gamma).coeffs).norm() <= 1e-12);
  }
}

TEST_CASE("principal map on a degenerate orbit") {
  const GroupPtr z2 = make_cyclic(2);
  const UnitaryRep lam = translation_rep(z2);
  const Eigen::VectorXcd psi = vec2(1, 1);
  const HelsonMap map = principal_map(lam, psi);

  // the cyclic space is one dimensional and the image norm matches
  const HelsonImage img = helson_apply(map, psi);
  CHECK(helson_stack(map, img).squaredNorm() == doctest::Approx(2.0));

  // U_psi[psi] = [psi,psi]^(1/2) = (2I + 2 rho(1))^(1/2) = I + rho(1)
  CHECK((img.fibers[0].coeffs - vec2(1, 1)).norm() <= 1e-12);

  // image fibers live in the supported subspace
  const VnOperator s = map.fiber_supports[0];
  CHECK((multiply(s, img.fibers[0]).coeffs - img.fibers[0].coeffs).norm() <=
        1e-12);

  CHECK_THROWS_AS(principal_map(lam, Eigen::VectorXcd::Zero(2)), Error);
}

TEST_CASE("principal map covariance and isometry") {
  rng::Stream st(42);
  const UnitaryRep rep =
      conjugate(translation_rep(make_cyclic(4)), st.haar_unitary(4));
  const Eigen::VectorXcd psi = st.cgaussian_vector(4);
  const HelsonMap map = principal_map(rep, psi);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXcd phi = map.domain_proj * st.cgaussian_vector(4);
    const double n = norm(rep, phi);
    if (n < 1e-12) continue;
    phi /= n;
    CHECK(std::abs(helson_stack(map, helson_apply(map, phi)).norm() - 1.0) <=
          1e-11);
    const int gamma = st.uniform_int(0, 3);
    const Eigen::VectorXcd lhs =
        helson_stack(map, helson_apply(map, rep.pi(gamma) * phi));
    const Eigen::VectorXcd rhs = helson_stack(
        map, right_compose(helson_apply(map, phi), vn_delta(rep.group, gamma)));
    CHECK((lhs - rhs).norm() <= 1e-11);
  }
}

TEST_CASE("orthogonal generators") {
  // lambda on the whole space: one generator suffices
  const GroupPtr z4 = make_cyclic(4);
  const UnitaryRep lam = translation_rep(z4);
  std::vector<Eigen::VectorXcd> basis;
  for (int i = 0; i < 4; ++i) basis.push_back(basis_vec(4, i));
  const auto gens = orthogonal_generators(lam, basis);
  int nonzero = 0;
  for (const auto& g : gens) nonzero += g.norm() > 0 ? 1 : 0;
  CHECK(nonzero == 1);

  // lambda (+) lambda on Z_2: two generators, each with a 2-dim orbit
  const GroupPtr z2 = make_cyclic(2);
  const UnitaryRep two = direct_sum(
      {translation_rep(z2), translation_rep(z2)});
  std::vector<Eigen::VectorXcd> basis4;
  for (int i = 0; i < 4; ++i) basis4.push_back(basis_vec(4, i));
  const auto gens2 = orthogonal_generators(two, basis4);
  int nonzero2 = 0;
  for (const auto& g : gens2) nonzero2 += g.norm() > 0 ? 1 : 0;
  CHECK(nonzero2 == 2);

  // V = <psi> for psi = delta_0 + delta_1: a single generator along psi
  const UnitaryRep lam2 = translation_rep(z2);
  const Eigen::VectorXcd psi = vec2(1, 1);
  const auto gens3 = orthogonal_generators(lam2, {psi / psi.norm()});
  CHECK(gens3.size() == 1);
  const Eigen::VectorXcd off_axis =
      gens3[0] - (psi.dot(gens3[0]) / psi.squaredNorm()) * psi;
  CHECK(off_axis.norm() <= 1e-12);

  // a non-invariant input space is rejected
  CHECK_THROWS_AS(orthogonal_generators(lam2, {basis_vec(2, 0)}), Error);
}

TEST_CASE("global map") {
  // single generator: same action as the principal map
  const GroupPtr z2 = make_cyclic(2);
  const UnitaryRep lam = translation_rep(z2);
  const Eigen::VectorXcd psi = vec2(1, 1);
  const HelsonMap pm = principal_map(lam, psi);
  const HelsonMap gm = global_map(lam, {psi});
  CHECK((pm.forward - gm.forward).norm() <= 1e-13);

  // lambda (+) lambda on Z_3 with canonical generators: global isometry
  const GroupPtr z3 = make_cyclic(3);
  const UnitaryRep two = direct_sum(
      {translation_rep(z3), translation_rep(z3)});
  std::vector<Eigen::VectorXcd> basis;
  for (int i = 0; i < 6; ++i) basis.push_back(basis_vec(6, i));
  const HelsonMap map = global_map(two, basis, true);
  CHECK(map.fiber_count() == 2);
  rng::Stream st(43);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXcd phi = st.cgaussian_vector(6);
    CHECK(std::abs(helson_stack(map, helson_apply(map, phi)).norm() -
                   norm(two, phi)) <= 1e-11);
    const int gamma = st.uniform_int(0, 2);
    const Eigen::VectorXcd lhs =
        helson_stack(map, helson_apply(map, two.pi(gamma) * phi));
    const Eigen::VectorXcd rhs = helson_stack(
        map, right_compose(helson_apply(map, phi), vn_delta(z3, gamma)));
    CHECK((lhs - rhs).norm() <= 1e-11 * std::max(1.0, rhs.norm()));
  }

  // every fiber of a global image lies in its supported subspace
  const Eigen::VectorXcd probe = st.cgaussian_vector(6);
  const HelsonImage img = helson_apply(map, probe);
  for (int i = 0; i < map.fiber_count(); ++i) {
    const VnOperator s = map.fiber_supports[i];
    CHECK((multiply(s, img.fibers[i]).coeffs - img.fibers[i].coeffs).norm() <=
          1e-11);
  }

  // generators with overlapping orbits are refused
  CHECK_THROWS_AS(global_map(lam, {vec2(1, 1), vec2(2, 2)}), Error);
}

TEST_CASE("exposed S_psi on principal maps") {
  // On an orthonormal orbit S coincides with U: Pi(gamma) psi -> rho(gamma)^*
  const GroupPtr z4 = make_cyclic(4);
  const UnitaryRep lam = translation_rep(z4);
  const HelsonMap onb = principal_map(lam, basis_vec(4, 0));
  for (int gamma = 0; gamma < 4; ++gamma) {
    const VnOperator s =
        principal_s_apply(onb, lam.pi(gamma) * basis_vec(4, 0));
    CHECK((s.coeffs - vn_delta(z4, gamma).coeffs).norm() <= 1e-12);
  }

  // Degenerate orbit: S psi is the supported representative of the
  // identity coefficient, i.e. the support projection itself.
  const GroupPtr z2 = make_cyclic(2);
  const UnitaryRep lam2 = translation_rep(z2);
  const Eigen::VectorXcd psi = vec2(1, 1);
  const HelsonMap map = principal_map(lam2, psi);
  const VnOperator s = principal_s_apply(map, psi);
  CHECK((s.coeffs - vec2(0.5, 0.5)).norm() <= 1e-12);

  // covariance S[Pi(gamma) phi] = S[phi] rho(gamma)^*
  rng::Stream st2(49);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXcd phi =
        map.domain_proj * st2.cgaussian_vector(2);
    const VnOperator lhs = principal_s_apply(map, lam2.pi(1) * phi);
    const VnOperator rhs = right_mul_rho_star(principal_s_apply(map, phi), 1);
    CHECK((lhs.coeffs - rhs.coeffs).norm() <= 1e-11);
  }
}

TEST_CASE("zak transform on the self action") {
  const GroupPtr z4 = make_cyclic(4);
  const GroupAction act = self_action(z4);
  const HelsonMap map = zak_map(act, make_tiling(act, {z4->identity}));

  // Z[delta_e](e) = rho(e) = I, an isometric image of a unit vector
  const HelsonImage img = helson_apply(map, basis_vec(4, 0));
  CHECK((img.fibers[0].coeffs - vn_identity(z4).coeffs).norm() <= 1e-14);
  CHECK(helson_stack(map, img).norm() == doctest::Approx(1.0));
}

TEST_CASE("zak transform round trip and quasi-periodicity") {
  const GroupPtr z4 = make_cyclic(4);
  const GroupAction act = standard_weighted_action(z4);  // |X| = 8, |C| = 2
  const TilingData tiling = make_tiling(act, standard_tile(z4));
  const HelsonMap map = zak_map(act, tiling);
  const UnitaryRep& rep = map.rep;

  rng::Stream st(44);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXcd phi = st.cgaussian_vector(8);
    CHECK((helson_invert(map, helson_apply(map, phi)) - phi).norm() <=
          1e-11 * phi.norm());

    const Eigen::VectorXcd s = st.cgaussian_vector(map.stacked_dim());
    CHECK((map.forward * (map.inverse * s) - s).norm() <= 1e-11 * s.norm());

    const int gamma = st.uniform_int(0, 3);
    const Eigen::VectorXcd lhs =
        helson_stack(map, helson_apply(map, rep.pi(gamma) * phi));
    const Eigen::VectorXcd rhs = helson_stack(
        map, right_compose(helson_apply(map, phi), vn_delta(z4, gamma)));
    CHECK((lhs - rhs).norm() <= 1e-11 * std::max(1.0, rhs.norm()));
  }

  // non-tiling actions are rejected
  CHECK_THROWS_AS(zak_map(act, TilingData{{0, 2}, {}}), Error);
}

TEST_CASE("operator shift") {
  const GroupPtr d3 = make_dihedral(3);
  const UnitaryRep lam = translation_rep(d3);
  rng::Stream st(45);
  const Eigen::VectorXcd psi = st.cgaussian_vector(6);

  CHECK((operator_shift(lam, vn_identity(d3), psi) - psi).norm() <= 1e-14);
  for (int gamma = 0; gamma < 6; ++gamma)
    CHECK((operator_shift(lam, vn_delta(d3, gamma), psi) -
           lam.pi(gamma) * psi).norm() <= 1e-14);

  // || P_F psi || = || F ||_{2,[psi,psi]} = || [psi,psi]^(1/2) F ||_2
  for (int t = 0; t < 50; ++t) {
    const VnOperator f = make_vn(d3, st.cgaussian_vector(6));
    const Eigen::VectorXcd p = st.cgaussian_vector(6);
    const WeightedSpace w = make_weighted_space(bracket(lam, p, p));
    CHECK(std::abs(norm(lam, operator_shift(lam, f, p)) -
                   weighted_norm(f, w)) <= 1e-11 * std::max(1.0, p.norm()));
  }

  CHECK_THROWS_AS(
      operator_shift(lam, vn_identity(make_cyclic(6)), psi), Error);
}

TEST_CASE("intertwining with operator coefficients") {
  const GroupPtr klein = make_product(make_cyclic(2), make_cyclic(2));
  const UnitaryRep lam = translation_rep(klein);
  std::vector<Eigen::VectorXcd> basis;
  for (int i = 0; i < 4; ++i) basis.push_back(basis_vec(4, i));
  const HelsonMap map = global_map(lam, basis, true);

  rng::Stream st(46);
  const Eigen::VectorXcd phi = st.cgaussian_vector(4);
  CHECK(intertwining_check(map, vn_identity(klein), phi) <= 1e-13);
  CHECK(intertwining_check(map, vn_delta(klein, 2), phi) <= 1e-12);
  for (int t = 0; t < 50; ++t) {
    const VnOperator f = make_vn(klein, st.cgaussian_vector(4));
    CHECK(intertwining_check(map, f, st.cgaussian_vector(4)) <= 1e-11);
  }
}

TEST_CASE("domain violations are rejected") {
  // a vector far outside the cyclic space of a principal map
  const GroupPtr z2 = make_cyclic(2);
  const UnitaryRep lam2 = translation_rep(z2);
  const UnitaryRep rep = direct_sum({lam2, lam2});
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = 1.0;
  const HelsonMap map = principal_map(rep, psi);
  Eigen::VectorXcd outside = Eigen::VectorXcd::Zero(4);
  outside(2) = 1.0;
  CHECK_THROWS_AS(intertwining_check(map, vn_identity(z2), outside), Error);
}

TEST_CASE("bdr coefficient") {
  const GroupPtr z2 = make_cyclic(2);
  const UnitaryRep lam2 = translation_rep(z2);
  const UnitaryRep rep = direct_sum({lam2, lam2});
  rng::Stream st(47);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi.head(2) = st.cgaussian_vector(2);  // generator confined to block one

  // phi = psi recovers the support projection as coefficient
  const BdrResult self = bdr_coefficient(rep, psi, psi);
  CHECK(self.in_span);
  const VnOperator s = support_projection(bracket(rep, psi, psi));
  CHECK((self.coefficient.coeffs - s.coeffs).norm() <= 1e-11);

  // phi = Pi(gamma0) psi is recovered with the bracket identity holding
  const Eigen::VectorXcd phi = rep.pi(1) * psi;
  const BdrResult shift = bdr_coefficient(rep, phi, psi);
  CHECK(shift.in_span);
  CHECK(shift.residual <= 1e-11 * norm(rep, phi));
  const VnOperator lhs = bracket(rep, phi, psi);
  const VnOperator rhs =
      multiply(bracket(rep, psi, psi), shift.coefficient);
  CHECK((lhs.coeffs - rhs.coeffs).norm() <= 1e-11);

  // the recovered coefficient is supported in s_{[psi,psi]}
  const VnOperator supp = support_projection(bracket(rep, psi, psi));
  CHECK((multiply(supp, shift.coefficient).coeffs -
         shift.coefficient.coeffs).norm() <= 1e-11);

  // a vector in the other block is rejected with residual = its norm
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(4);
  out.tail(2) = st.cgaussian_vector(2);
  out /= norm(rep, out);
  const BdrResult rej = bdr_coefficient(rep, out, psi);
  CHECK_FALSE(rej.in_span);
  CHECK(std::abs(rej.residual - 1.0) <= 1e-12);

  CHECK_THROWS_AS(
      bdr_coefficient(rep, phi, Eigen::VectorXcd::Zero(4)), Error);
}

TEST_CASE("bracket reconstruction from any map") {
  // [phi,psi] = sum_x nu(x) T[psi](x)^* T[phi](x), for all three kinds.
  rng::Stream st(48);
  const GroupPtr d3 = make_dihedral(3);
  const UnitaryRep lam = translation_rep(d3);

  std::vector<HelsonMap> maps;
  maps.push_back(principal_map(lam, st.cgaussian_vector(6)));
  std::vector<Eigen::VectorXcd> basis;
  for (int i = 0; i < 6; ++i) basis.push_back(basis_vec(6, i));
  maps.push_back(global_map(lam, basis, true));
  const GroupAction act = standard_weighted_action(d3);
  maps.push_back(zak_map(act, make_tiling(act, standard_tile(d3))));

  for (const HelsonMap& map : maps) {
    for (int t = 0; t < 30; ++t) {
      const Eigen::VectorXcd phi =
          map.domain_proj * st.cgaussian_vector(map.rep.dim);
      const Eigen::VectorXcd psi =
          map.domain_proj * st.cgaussian_vector(map.rep.dim);
      const VnOperator via = bracket_from_map(map, helson_apply(map, phi),
                                              helson_apply(map, psi));
      const VnOperator direct = bracket(map.rep, phi, psi);
      CHECK((via.coeffs - direct.coeffs).norm() <=
            1e-10 * std::max(1.0, direct.coeffs.norm()));
    }
  }
}
