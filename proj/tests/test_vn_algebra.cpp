// Fourier calculus in the finite group von Neumann algebra.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cmath>
#include <limits>

#include "vnframes/rng.hpp"
#include "vnframes/vn_algebra.hpp"

using namespace vnframes;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

VnOperator random_op(rng::Stream& st, const GroupPtr& g) {
  return make_vn(g, st.cgaussian_vector(g->order));
}
}  // namespace

TEST_CASE("to_matrix on basis operators") {
  const GroupPtr z2 = make_cyclic(2);
  CHECK(to_matrix(vn_identity(z2)).isApprox(Eigen::MatrixXcd::Identity(2, 2)));

  Eigen::MatrixXcd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(to_matrix(vn_delta(z2, 1)).isApprox(swap));

  // delta_{gamma0} always realizes rho(gamma0)^*
  const GroupPtr d3 = make_dihedral(3);
  auto [rho, lambda] = regular_representations(*d3);
  for (int gamma = 0; gamma < 6; ++gamma)
    CHECK((to_matrix(vn_delta(d3, gamma)) - rho[gamma].adjoint()).norm() ==
          0.0);
}

TEST_CASE("fourier coefficients") {
  const GroupPtr d4 = make_dihedral(4);
  CHECK((fourier_coefficients(Eigen::MatrixXcd::Identity(8, 8), d4).coeffs -
         vn_identity(d4).coeffs).norm() == 0.0);

  auto [rho, lambda] = regular_representations(*d4);
  for (int gamma = 0; gamma < 8; ++gamma) {
    const VnOperator f = fourier_coefficients(rho[gamma].adjoint(), d4);
    CHECK((f.coeffs - vn_delta(d4, gamma).coeffs).norm() == 0.0);
  }

  // round trip on random affiliated matrices
  rng::Stream st(11);
  for (int t = 0; t < 50; ++t) {
    const VnOperator f = random_op(st, d4);
    const VnOperator back = fourier_coefficients(to_matrix(f), d4);
    CHECK((back.coeffs - f.coeffs).norm() <= 1e-12 * f.coeffs.norm());
  }

  // a non-affiliated matrix is rejected
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(8, 8);
  bad(0, 0) = 1.0;
  CHECK_THROWS_AS(fourier_coefficients(bad, d4), Error);
}

TEST_CASE("trace") {
  const GroupPtr z6 = make_cyclic(6);
  CHECK(trace(vn_identity(z6)) == std::complex<double>(1.0, 0.0));
  for (int gamma = 1; gamma < 6; ++gamma)
    CHECK(std::abs(trace(vn_delta(z6, gamma))) == 0.0);

  rng::Stream st(12);
  for (int t = 0; t < 100; ++t) {
    const VnOperator f = random_op(st, z6);
    const VnOperator g = random_op(st, z6);
    CHECK(std::abs(trace(multiply(f, g)) - trace(multiply(g, f))) <=
          1e-12 * f.coeffs.norm() * g.coeffs.norm());
  }
}

TEST_CASE("p norms") {
  const GroupPtr z2 = make_cyclic(2);
  // unitaries have all norms 1
  for (double p : {1.0, 2.0, 3.5, kInf})
    CHECK(p_norm(vn_delta(z2, 1), p) == doctest::Approx(1.0).epsilon(1e-12));

  // I + rho(1): |F| has eigenvalues {2, 0}
  const VnOperator f = add(vn_identity(z2), vn_delta(z2, 1));
  CHECK(p_norm(f, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p_norm(f, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(p_norm(f, kInf) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(p_norm(f, 0.5), Error);

  // Plancherel and Hoelder monotonicity on random operators
  const GroupPtr d3 = make_dihedral(3);
  rng::Stream st(13);
  for (int t = 0; t < 200; ++t) {
    const VnOperator g = random_op(st, d3);
    const double n2 = p_norm(g, 2.0);
    CHECK(n2 * n2 ==
          doctest::Approx(g.coeffs.squaredNorm()).epsilon(1e-12));
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
      const double np = p_norm(g, p);
      CHECK(np >= prev - 1e-12);
      prev = np;
    }
    CHECK(p_norm(g, kInf) >= prev - 1e-12);
  }
}

TEST_CASE("ring operations against matrix forms") {
  const GroupPtr d3 = make_dihedral(3);
  // adjoint of a basis operator
  for (int gamma = 0; gamma < 6; ++gamma)
    CHECK((adjoint(vn_delta(d3, gamma)).coeffs -
           vn_delta(d3, d3->inv(gamma)).coeffs).norm() == 0.0);

  // product order matters: rho(a)^* rho(b)^* = rho(ba)^*
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const VnOperator prod = multiply(vn_delta(d3, a), vn_delta(d3, b));
      CHECK((prod.coeffs - vn_delta(d3, d3->mul(b, a)).coeffs).norm() == 0.0);
    }

  rng::Stream st(14);
  for (int t = 0; t < 40; ++t) {
    const VnOperator f = random_op(st, d3);
    const VnOperator g = random_op(st, d3);
    CHECK((to_matrix(multiply(f, g)) - to_matrix(f) * to_matrix(g)).norm() <=
          1e-13 * to_matrix(f).norm() * to_matrix(g).norm());
    CHECK((to_matrix(adjoint(f)) - to_matrix(f).adjoint()).norm() == 0.0);
    CHECK((to_matrix(add(f, g)) - (to_matrix(f) + to_matrix(g))).norm() <=
          1e-13);
    CHECK((to_matrix(scale(f, {0.5, -2.0})) -
           std::complex<double>(0.5, -2.0) * to_matrix(f)).norm() <= 1e-13);
  }

  CHECK_THROWS_AS(multiply(random_op(st, d3), random_op(st, make_cyclic(6))),
                  Error);
}

TEST_CASE("spectral decomposition") {
  const GroupPtr z2 = make_cyclic(2);
  const SpectralData sid = spectral(vn_identity(z2));
  CHECK(sid.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(sid.eigenvalues(1) == doctest::Approx(1.0));

  const VnOperator f = add(vn_identity(z2), vn_delta(z2, 1));
  const SpectralData sf = spectral(f);
  CHECK(sf.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sf.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-14));

  // reconstruction
  const Eigen::MatrixXcd rec = sf.eigenvectors *
                               sf.eigenvalues.asDiagonal() *
                               sf.eigenvectors.adjoint();
  CHECK((rec - to_matrix(f)).norm() <= 1e-13 * to_matrix(f).norm());

  // non-self-adjoint input is rejected
  CHECK_THROWS_AS(spectral(vn_delta(make_dihedral(3), 1)), Error);
}

TEST_CASE("support projections") {
  const GroupPtr z2 = make_cyclic(2);
  // invertible operator: support is the identity
  const VnOperator inv = add(scale(vn_identity(z2), 3.0), vn_delta(z2, 1));
  CHECK((support_projection(inv).coeffs - vn_identity(z2).coeffs).norm() <=
        1e-12);

  // s_{I + rho(1)} = (I + rho(1)) / 2
  const VnOperator f = add(vn_identity(z2), vn_delta(z2, 1));
  const VnOperator s = support_projection(f);
  Eigen::VectorXcd expect(2);
  expect << 0.5, 0.5;
  CHECK((s.coeffs - expect).norm() <= 1e-13);

  CHECK((support_projection(vn_zero(z2)).coeffs).norm() == 0.0);

  // P^2 = P = P^*, F P = F on random self-adjoint operators
  const GroupPtr d4 = make_dihedral(4);
  rng::Stream st(15);
  for (int t = 0; t < 30; ++t) {
    VnOperator h = random_op(st, d4);
    h = add(h, adjoint(h));
    h.coeffs /= h.coeffs.norm();
    const VnOperator p = support_projection(h);
    CHECK((multiply(p, p).coeffs - p.coeffs).norm() <= 1e-10);
    CHECK((adjoint(p).coeffs - p.coeffs).norm() <= 1e-10);
    CHECK((multiply(h, p).coeffs - h.coeffs).norm() <= 1e-10);
    CHECK((multiply(p, h).coeffs - h.coeffs).norm() <= 1e-10);
  }
}

TEST_CASE("functional calculus") {
  const GroupPtr z4 = make_cyclic(4);
  auto sqrt_fn = [](double x) { return x <= 0.0 ? 0.0 : std::sqrt(x); };

  CHECK((apply_function(vn_identity(z4), sqrt_fn).coeffs -
         vn_identity(z4).coeffs).norm() <= 1e-14);
  CHECK((apply_function(scale(vn_identity(z4), 2.0), sqrt_fn).coeffs -
         scale(vn_identity(z4), std::sqrt(2.0)).coeffs).norm() <= 1e-14);

  // pinv of I + rho(1) on Z_2 is (I + rho(1)) / 4
  const GroupPtr z2 = make_cyclic(2);
  const VnOperator f = add(vn_identity(z2), vn_delta(z2, 1));
  const VnOperator pinv_f =
      apply_function(f, [](double x) { return 1.0 / x; }, true);
  Eigen::VectorXcd expect(2);
  expect << 0.25, 0.25;
  CHECK((pinv_f.coeffs - expect).norm() <= 1e-13);

  // sqrt of a genuinely negative operator is undefined
  const VnOperator neg = scale(vn_identity(z2), -1.0);
  CHECK_THROWS_AS(
      apply_function(neg, [](double x) { return std::sqrt(x); }), Error);

  // sqrt of PSD reproduces the operator when squared
  const GroupPtr d4 = make_dihedral(4);
  rng::Stream st(16);
  for (int t = 0; t < 30; ++t) {
    const VnOperator a = random_op(st, d4);
    const VnOperator psd = multiply(adjoint(a), a);
    const VnOperator root = apply_function(psd, sqrt_fn);
    CHECK((multiply(root, root).coeffs - psd.coeffs).norm() <=
          1e-9 * psd.coeffs.norm());
  }
}

TEST_CASE("pontryagin eigenvalues") {
  const GroupPtr z1 = make_cyclic(1);
  CHECK(pontryagin_eigenvalues(vn_identity(z1))(0) ==
        std::complex<double>(1.0, 0.0));

  const GroupPtr z2 = make_cyclic(2);
  Eigen::VectorXcd vals =
      pontryagin_eigenvalues(add(vn_identity(z2), vn_delta(z2, 1)));
  Eigen::VectorXd re(2);
  re << vals(0).real(), vals(1).real();
  std::sort(re.data(), re.data() + 2);
  CHECK(re(0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(re(1) == doctest::Approx(2.0).epsilon(1e-13));

  // multiset equality with the matrix spectrum on Z_8
  const GroupPtr z8 = make_cyclic(8);
  rng::Stream st(17);
  for (int t = 0; t < 20; ++t) {
    VnOperator f = random_op(st, z8);
    f = add(f, adjoint(f));  // self-adjoint so the spectrum is real
    const Eigen::VectorXcd pv = pontryagin_eigenvalues(f);
    Eigen::VectorXd pvr(8);
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(pv(i).imag()) <= 1e-10);
      pvr(i) = pv(i).real();
    }
    std::sort(pvr.data(), pvr.data() + 8);
    Eigen::VectorXd spec = spectral(f).eigenvalues;
    CHECK((pvr - spec).cwiseAbs().maxCoeff() <= 1e-10);
  }

  CHECK_THROWS_AS(pontryagin_eigenvalues(vn_identity(make_dihedral(3))),
                  Error);
}

TEST_CASE("characters of abelian groups") {
  for (const GroupPtr& g : {make_cyclic(4), make_cyclic(8),
                            make_product(make_cyclic(2), make_cyclic(4))}) {
    const auto chars = characters(*g);
    CHECK(static_cast<int>(chars.size()) == g->order);
    for (const auto& chi : chars) {
      CHECK(std::abs(chi(g->identity) - std::complex<double>(1, 0)) <= 1e-9);
      for (int a = 0; a < g->order; ++a) {
        CHECK(std::abs(std::abs(chi(a)) - 1.0) <= 1e-9);
        for (int b = 0; b < g->order; ++b)
          CHECK(std::abs(chi(g->mul(a, b)) - chi(a) * chi(b)) <= 1e-8);
      }
    }
    // distinct characters are orthogonal
    for (size_t i = 0; i < chars.size(); ++i)
      for (size_t j = i + 1; j < chars.size(); ++j)
        CHECK(std::abs(chars[i].dot(chars[j])) <= 1e-8);
  }
}

TEST_CASE("affiliation invariant") {
  const GroupPtr d3 = make_dihedral(3);
  auto [rho, lambda] = regular_representations(*d3);
  rng::Stream st(18);
  for (int t = 0; t < 20; ++t) {
    const VnOperator f = random_op(st, d3);
    const Eigen::MatrixXcd m = to_matrix(f);
    for (int gamma = 0; gamma < 6; ++gamma)
      CHECK((m * lambda[gamma] - lambda[gamma] * m).norm() <=
            1e-12 * f.coeffs.norm());
  }
}
