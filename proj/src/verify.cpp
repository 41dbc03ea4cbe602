// vnframes/verify.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "vnframes/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "vnframes/rng.hpp"

namespace vnframes {

namespace {

constexpr const char* kVersion = "vnframes 0.1.0";

std::map<std::string, double> default_tolerances() {
  return {
      {"vn_identities", 1e-11},
      {"sqrt_reconstruction", 1e-9},
      {"abelian_oracle", 1e-10},
      {"bracket_axioms", 1e-11},
      {"bracket_gram", 1e-11},
      {"principal_bounds", 1e-9},
      {"duality_multiset", 1e-9},
      {"rank_consistency", 1e-10},
      {"helson_isometry", 1e-11},
      {"helson_covariance", 1e-11},
      {"zak_roundtrip", 1e-11},
      {"bracket_reconstruction", 1e-10},
      {"intertwining", 1e-11},
      {"bdr", 1e-10},
      {"bdr_rejection", 1e-12},
      {"multiplicative", 1e-11},
      {"negative_control", 0.0},
      {"module_axioms", 1e-11},
      {"span_rank", 1e-10},
      {"main_theorem", 1e-9},
      {"reproducing", 1e-10},
      {"dual_bounds", 1e-9},
      {"frame_conjugation", 1e-10},
  };
}

bool suite_has(const std::string& suite, const std::string& id) {
  auto starts = [&](const char* p) { return id.rfind(p, 0) == 0; };
  if (suite == "all") return true;
  if (suite == "vn") return starts("vn.");
  if (suite == "bracket")
    return starts("vn.") || starts("bracket.") || starts("gram.");
  if (suite == "bracket-axioms") return starts("bracket.property");
  if (suite == "helson") return starts("helson.");
  if (suite == "modular") return starts("modular.") || starts("module.");
  if (suite == "main") return starts("modular.main");
  throw Error("unknown suite: " + suite);
}

struct Ctx {
  const RunConfig* cfg = nullptr;
  std::map<std::string, double> tol;
  std::vector<CheckRecord> records;

  std::uint64_t sub(const std::string& tag) const {
    return rng::substream(cfg->seed, tag);
  }
  bool wants(const std::string& id) const {
    return suite_has(cfg->suite, id);
  }
  void record(const std::string& id, const std::string& group,
              const std::string& rep, double defect,
              const std::string& tol_name) {
    CheckRecord r;
    r.check_id = id;
    r.group = group;
    r.rep = rep;
    r.max_defect = defect;
    r.threshold = tol.at(tol_name);
    r.pass = r.max_defect <= r.threshold;
    records.push_back(std::move(r));
  }
};

VnOperator random_vn(rng::Stream& st, const GroupPtr& g, bool unit = true) {
  Eigen::VectorXcd c = st.cgaussian_vector(g->order);
  if (unit) {
    const double n = c.norm();
    if (n > 0) c /= n;
  }
  return make_vn(g, std::move(c));
}

Eigen::VectorXd nonzero_part(const Eigen::VectorXd& spectrum) {
  const double cut = default_rank_tol(spectrum);
  std::vector<double> keep;
  for (int i = 0; i < spectrum.size(); ++i)
    if (std::abs(spectrum(i)) > cut) keep.push_back(spectrum(i));
  std::sort(keep.begin(), keep.end());
  Eigen::VectorXd out(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) out(static_cast<int>(i)) = keep[i];
  return out;
}

double multiset_defect(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return 1.0;
  double scale = 1.0;
  if (a.size()) scale = std::max(scale, a.cwiseAbs().maxCoeff());
  double worst = 0.0;
  for (int i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a(i) - b(i)) / scale);
  return worst;
}

// ---------------------------------------------------------------------
// Group-level checks
// ---------------------------------------------------------------------

void vn_checks(Ctx& c, const std::string& gs, const GroupPtr& g) {
  const bool want_core = c.wants("vn.roundtrip");
  const bool want_oracle = c.wants("vn.abelian_oracle") && g->abelian;
  if (!want_core && !want_oracle) return;

  const int trials = c.cfg->trials;
  rng::Stream st(c.sub("vn/" + gs));
  auto [rho, lambda] = regular_representations(*g);
  (void)rho;

  if (want_core) {
    double d_round = 0, d_plan = 0, d_aff = 0, d_trace = 0, d_supp = 0,
           d_sqrt = 0;
    for (int t = 0; t < trials; ++t) {
      const VnOperator f = random_vn(st, g);
      const Eigen::MatrixXcd m = to_matrix(f);
      const VnOperator f2 = fourier_coefficients(m, g);
      d_round = std::max(d_round, (f2.coeffs - f.coeffs).norm());

      const double n2 = p_norm(f, 2.0);
      d_plan = std::max(d_plan,
                        std::abs(n2 * n2 - f.coeffs.squaredNorm()));

      for (int gamma = 0; gamma < g->order; ++gamma)
        d_aff = std::max(d_aff,
                         (m * lambda[gamma] - lambda[gamma] * m).norm());

      const VnOperator h = random_vn(st, g);
      d_trace = std::max(
          d_trace, std::abs(trace(multiply(f, h)) - trace(multiply(h, f))));

      const VnOperator sa = add(f, adjoint(f));
      const VnOperator p = support_projection(sa);
      d_supp = std::max(d_supp, (multiply(p, p).coeffs - p.coeffs).norm());
      d_supp = std::max(d_supp, (adjoint(p).coeffs - p.coeffs).norm());
      d_supp = std::max(
          d_supp, (multiply(sa, p).coeffs - sa.coeffs).norm() /
                      std::max(1.0, sa.coeffs.norm()));

      const VnOperator psd = multiply(adjoint(f), f);
      const VnOperator root = apply_function(
          psd, [](double x) { return x <= 0.0 ? 0.0 : std::sqrt(x); });
      d_sqrt = std::max(
          d_sqrt, (multiply(root, root).coeffs - psd.coeffs).norm() /
                      std::max(1.0, psd.coeffs.norm()));
    }
    c.record("vn.roundtrip", gs, "-", d_round, "vn_identities");
    c.record("vn.plancherel", gs, "-", d_plan, "vn_identities");
    c.record("vn.affiliation", gs, "-", d_aff, "vn_identities");
    c.record("vn.traciality", gs, "-", d_trace, "vn_identities");
    c.record("vn.support", gs, "-", d_supp, "vn_identities");
    c.record("vn.sqrt", gs, "-", d_sqrt, "sqrt_reconstruction");
  }

  if (want_oracle) {
    const UnitaryRep lam = translation_rep(g);
    const auto chars = characters(*g);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Eigen::VectorXcd psi = st.cgaussian_vector(g->order);
      const VnOperator b = bracket(lam, psi, psi);
      const SpectralData sd = spectral(b);

      const Eigen::VectorXcd pv = pontryagin_eigenvalues(b);
      Eigen::VectorXd pv_real(pv.size());
      for (int i = 0; i < pv.size(); ++i) {
        worst = std::max(worst, std::abs(pv(i).imag()));
        pv_real(i) = pv(i).real();
      }
      std::sort(pv_real.data(), pv_real.data() + pv_real.size());
      Eigen::VectorXd spec = sd.eigenvalues;
      std::sort(spec.data(), spec.data() + spec.size());
      const double scale = std::max(1.0, spec.cwiseAbs().maxCoeff());
      worst = std::max(worst, (pv_real - spec).cwiseAbs().maxCoeff() / scale);

      // The periodization picture: values are |psi_hat(chi)|^2.
      Eigen::VectorXd period(static_cast<int>(chars.size()));
      for (size_t k = 0; k < chars.size(); ++k) {
        std::complex<double> acc = 0.0;
        for (int x = 0; x < g->order; ++x)
          acc += psi(x) * std::conj(chars[k](x));
        period(static_cast<int>(k)) = std::norm(acc);
      }
      std::sort(period.data(), period.data() + period.size());
      worst = std::max(worst, (period - spec).cwiseAbs().maxCoeff() / scale);
    }
    c.record("vn.abelian_oracle", gs, "translation", worst, "abelian_oracle");
  }
}

// Shared body for isometry/covariance/reconstruction/intertwining on one map.
void helson_map_checks(Ctx& c, const std::string& gs, const std::string& label,
                       const HelsonMap& map, rng::Stream& st) {
  const int trials = c.cfg->trials;
  const UnitaryRep& rep = map.rep;
  const int ng = rep.group->order;
  double d_iso = 0, d_cov = 0, d_rec = 0, d_int = 0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXcd phi = map.domain_proj * st.cgaussian_vector(rep.dim);
    const double nphi = norm(rep, phi);
    if (nphi < 1e-12) continue;
    phi /= nphi;

    const HelsonImage img = helson_apply(map, phi);
    d_iso = std::max(
        d_iso, std::abs(helson_stack(map, img).norm() - norm(rep, phi)));

    const int gamma = st.uniform_int(0, ng - 1);
    const Eigen::VectorXcd lhs =
        helson_stack(map, helson_apply(map, rep.pi(gamma) * phi));
    const Eigen::VectorXcd rhs =
        helson_stack(map, right_compose(img, vn_delta(rep.group, gamma)));
    d_cov = std::max(d_cov, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));

    Eigen::VectorXcd psi = map.domain_proj * st.cgaussian_vector(rep.dim);
    const double npsi = norm(rep, psi);
    if (npsi < 1e-12) continue;
    psi /= npsi;
    const VnOperator via_map =
        bracket_from_map(map, img, helson_apply(map, psi));
    const VnOperator direct = bracket(rep, phi, psi);
    d_rec = std::max(d_rec, (via_map.coeffs - direct.coeffs).norm() /
                                std::max(1.0, direct.coeffs.norm()));

    const VnOperator f = random_vn(st, rep.group);
    d_int = std::max(d_int, intertwining_check(map, f, phi));
  }
  c.record("helson.isometry", gs, label, d_iso, "helson_isometry");
  c.record("helson.covariance", gs, label, d_cov, "helson_covariance");
  c.record("helson.bracket_reconstruction", gs, label, d_rec,
           "bracket_reconstruction");
  c.record("helson.intertwining", gs, label, d_int, "intertwining");
}

void zak_checks(Ctx& c, const std::string& gs, const GroupPtr& g) {
  if (!c.wants("helson.isometry") && !c.wants("helson.zak_roundtrip")) return;
  struct Case {
    std::string label;
    GroupAction action;
    std::vector<int> tile;
  };
  std::vector<Case> cases;
  cases.push_back({"zak(weighted)", standard_weighted_action(g),
                   standard_tile(g)});
  cases.push_back({"zak(self)", self_action(g), {g->identity}});
  for (const auto& cs : cases) {
    const TilingData tiling = make_tiling(cs.action, cs.tile);
    const HelsonMap map = zak_map(cs.action, tiling);
    rng::Stream st(c.sub("zak/" + gs + "/" + cs.label));
    if (c.wants("helson.isometry")) helson_map_checks(c, gs, cs.label, map, st);
    if (c.wants("helson.zak_roundtrip")) {
      double d = 0.0;
      for (int t = 0; t < c.cfg->trials; ++t) {
        const Eigen::VectorXcd phi = st.cgaussian_vector(map.rep.dim);
        const Eigen::VectorXcd back =
            helson_invert(map, helson_apply(map, phi));
        d = std::max(d, (back - phi).norm() / std::max(1.0, phi.norm()));
        const Eigen::VectorXcd s = st.cgaussian_vector(map.stacked_dim());
        d = std::max(d, (map.forward * (map.inverse * s) - s).norm() /
                            std::max(1.0, s.norm()));
      }
      c.record("helson.zak_roundtrip", gs, cs.label, d, "zak_roundtrip");
    }
  }
}

void gram_equality_check(Ctx& c, const std::string& gs, const GroupPtr& g) {
  if (!c.wants("bracket.gram_equality")) return;
  const UnitaryRep lam = translation_rep(g);
  rng::Stream st(c.sub("gram_equality/" + gs));
  double d = 0.0;
  for (int t = 0; t < c.cfg->trials; ++t) {
    const Eigen::VectorXcd psi = st.cgaussian_vector(g->order);
    d = std::max(d, bracket_equals_gram_check(lam, psi));
  }
  c.record("bracket.gram_equality", gs, "translation", d, "bracket_gram");
}

// ---------------------------------------------------------------------
// Representation-level checks
// ---------------------------------------------------------------------

std::vector<Eigen::VectorXcd> canonical_basis(int dim) {
  std::vector<Eigen::VectorXcd> basis;
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(i) = 1.0;
    basis.push_back(std::move(e));
  }
  return basis;
}

void bracket_checks(Ctx& c, const std::string& gs, const std::string& rs,
                    const UnitaryRep& rep) {
  if (c.wants("bracket.property_i")) {
    const BracketDiagnostics d = verify_bracket_properties(
        rep, c.cfg->trials, c.sub("bracket/" + gs + "/" + rs));
    c.record("bracket.property_i", gs, rs, d.adjoint_defect, "bracket_axioms");
    c.record("bracket.property_ii", gs, rs,
             std::max(d.covariance_left, d.covariance_right),
             "bracket_axioms");
    c.record("bracket.property_iii", gs, rs,
             std::max(d.positivity_defect, d.norm_identity_defect),
             "bracket_axioms");
  }

  if (c.wants("bracket.principal_bounds")) {
    rng::Stream st(c.sub("principal/" + gs + "/" + rs));
    double d = 0.0;
    for (int t = 0; t < c.cfg->trials; ++t) {
      const Eigen::VectorXcd psi = st.cgaussian_vector(rep.dim);
      const FrameReport via_gram = classify(OrbitSystem{rep, {psi}});
      const FrameReport via_bracket = principal_characterization(rep, psi);
      if (via_gram.kernel_dim != via_bracket.kernel_dim ||
          via_gram.classification != via_bracket.classification) {
        d = 1.0;
        continue;
      }
      d = std::max(d, std::abs(via_gram.lower - via_bracket.lower) /
                          std::max(via_gram.lower, 1e-300));
      d = std::max(d, std::abs(via_gram.upper - via_bracket.upper) /
                          std::max(via_gram.upper, 1e-300));
    }
    c.record("bracket.principal_bounds", gs, rs, d, "principal_bounds");
  }

  if (c.wants("gram.duality_multiset")) {
    rng::Stream st(c.sub("duality/" + gs + "/" + rs));
    double d_dual = 0.0, d_rank = 0.0;
    for (int t = 0; t < c.cfg->trials; ++t) {
      OrbitSystem sys{rep, {st.cgaussian_vector(rep.dim),
                            st.cgaussian_vector(rep.dim)}};
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eg(gram_matrix(sys));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ef(frame_operator(sys));
      d_dual = std::max(d_dual, multiset_defect(nonzero_part(eg.eigenvalues()),
                                                nonzero_part(ef.eigenvalues())));
      const RankData rd = rank_consistency(sys);
      d_rank = std::max(d_rank, rd.consistent ? 0.0 : 1.0);
    }
    c.record("gram.duality_multiset", gs, rs, d_dual, "duality_multiset");
    c.record("gram.rank_consistency", gs, rs, d_rank, "rank_consistency");
  }
}

void bdr_checks(Ctx& c, const std::string& gs, const std::string& rs,
                const UnitaryRep& rep) {
  if (!c.wants("helson.bdr_recovery")) return;
  rng::Stream st(c.sub("bdr/" + gs + "/" + rs));
  const int ng = rep.group->order;
  double d_rec = 0.0, d_rej = 0.0;
  for (int t = 0; t < c.cfg->trials; ++t) {
    Eigen::VectorXcd psi = st.cgaussian_vector(rep.dim);
    psi /= norm(rep, psi);
    const VnOperator gcoef = random_vn(st, rep.group);
    const Eigen::VectorXcd phi = operator_shift(rep, gcoef, psi);
    if (norm(rep, phi) < 1e-10) continue;
    const BdrResult res = bdr_coefficient(rep, phi, psi);
    d_rec = std::max(d_rec, res.in_span ? 0.0 : 1.0);
    d_rec = std::max(d_rec, res.residual / norm(rep, phi));
    const VnOperator lhs = bracket(rep, phi, psi);
    const VnOperator rhs =
        multiply(bracket(rep, psi, psi), res.coefficient);
    d_rec = std::max(d_rec, (lhs.coeffs - rhs.coeffs).norm() /
                                std::max(1.0, lhs.coeffs.norm()));

    // Rejection: a vector orthogonal to the whole orbit, when one exists.
    Eigen::MatrixXcd orbit(rep.dim, ng);
    for (int gamma = 0; gamma < ng; ++gamma)
      orbit.col(gamma) = rep.pi(gamma) * psi;
    const Eigen::MatrixXcd porb = span_projector(rep, orbit);
    Eigen::VectorXcd r = st.cgaussian_vector(rep.dim);
    r -= porb * r;
    if (norm(rep, r) < 1e-6) continue;
    r /= norm(rep, r);
    const BdrResult rej = bdr_coefficient(rep, r, psi);
    d_rej = std::max(d_rej, rej.in_span ? 1.0 : 0.0);
    d_rej = std::max(d_rej, std::abs(rej.residual - norm(rep, r)));
  }
  c.record("helson.bdr_recovery", gs, rs, d_rec, "bdr");
  c.record("helson.bdr_rejection", gs, rs, d_rej, "bdr_rejection");
}

void modular_checks(Ctx& c, const std::string& gs, const std::string& rs,
                    const UnitaryRep& rep, const HelsonMap& map) {
  const int trials = c.cfg->trials;
  const int ng = rep.group->order;

  if (c.wants("module.multiplicative_invariance")) {
    rng::Stream st(c.sub("multiplicative/" + gs + "/" + rs));
    double d = 0.0;
    for (int t = 0; t < std::max(1, trials / 10); ++t) {
      Eigen::VectorXcd psi = st.cgaussian_vector(rep.dim);
      psi /= norm(rep, psi);
      std::vector<Eigen::VectorXcd> basis;
      for (int gamma = 0; gamma < ng; ++gamma)
        basis.push_back(rep.pi(gamma) * psi);
      d = std::max(d, multiplicative_invariance_check(
                          map, basis, 10,
                          c.sub("multiplicative-inner/" + gs + "/" + rs +
                                "/" + std::to_string(t))));
    }
    c.record("module.multiplicative_invariance", gs, rs, d, "multiplicative");
  }

  if (c.wants("modular.module_axioms")) {
    rng::Stream st(c.sub("axioms/" + gs + "/" + rs));
    double d = 0.0;
    for (int t = 0; t < trials; ++t) {
      Eigen::VectorXcd v1 = map.domain_proj * st.cgaussian_vector(rep.dim);
      Eigen::VectorXcd v2 = map.domain_proj * st.cgaussian_vector(rep.dim);
      if (norm(rep, v1) < 1e-10 || norm(rep, v2) < 1e-10) continue;
      v1 /= norm(rep, v1);
      v2 /= norm(rep, v2);
      const HelsonImage a = helson_apply(map, v1);
      const HelsonImage b = helson_apply(map, v2);
      const VnOperator f = random_vn(st, rep.group);
      const VnOperator g2 = random_vn(st, rep.group);

      // {Phi, Psi F} = F^* {Phi, Psi}
      const VnOperator lhs = bracket_from_map(map, a, right_compose(b, f));
      const VnOperator rhs =
          multiply(adjoint(f), bracket_from_map(map, a, b));
      d = std::max(d, (lhs.coeffs - rhs.coeffs).norm());

      // (Phi F) G = Phi (F G), Phi I = Phi
      const Eigen::VectorXcd s1 = helson_stack(
          map, right_compose(right_compose(a, f), g2));
      const Eigen::VectorXcd s2 =
          helson_stack(map, right_compose(a, multiply(f, g2)));
      d = std::max(d, (s1 - s2).norm());
      const Eigen::VectorXcd s3 = helson_stack(
          map, right_compose(a, vn_identity(rep.group)));
      d = std::max(d, (s3 - helson_stack(map, a)).norm());

      // Positivity and the norm identity tau({Psi,Psi}) = ||Psi||^2.
      const VnOperator baa = bracket_from_map(map, a, a);
      const SpectralData sd = spectral(baa);
      if (sd.eigenvalues.size())
        d = std::max(d, std::max(0.0, -sd.eigenvalues.minCoeff()));
      d = std::max(d, std::abs(trace(baa).real() -
                               helson_stack(map, a).squaredNorm()));
    }
    c.record("modular.module_axioms", gs, rs, d, "module_axioms");
  }

  if (c.wants("modular.main_theorem")) {
    rng::Stream st(c.sub("main/" + gs + "/" + rs));
    double d = 0.0;
    for (int t = 0; t < trials; ++t) {
      const std::vector<Eigen::VectorXcd> gens = {
          st.cgaussian_vector(rep.dim), st.cgaussian_vector(rep.dim)};
      const MainTheoremRecord rec = main_theorem_check(
          map, gens, 10,
          c.sub("main-inner/" + gs + "/" + rs + "/" + std::to_string(t)),
          c.tol.at("main_theorem"));
      d = std::max({d, rec.classifications_match ? 0.0 : 1.0,
                    rec.lower_defect, rec.upper_defect,
                    rec.trace_sandwich_defect});
    }
    c.record("modular.main_theorem", gs, rs, d, "main_theorem");
  }

  if (c.wants("modular.reproducing")) {
    rng::Stream st(c.sub("dual/" + gs + "/" + rs));
    double d_rep = 0.0, d_dual = 0.0, d_conj = 0.0;
    const int nsys = std::max(1, trials / 5);
    for (int t = 0; t < nsys; ++t) {
      const std::vector<Eigen::VectorXcd> gens = {
          st.cgaussian_vector(rep.dim), st.cgaussian_vector(rep.dim)};
      const ModularSystem sys = make_modular_system(map, gens);
      const ModularReport before = modular_classify(sys);
      if (before.classification == ModularClass::degenerate) continue;
      const std::vector<HelsonImage> dual = canonical_dual(sys);
      for (int p = 0; p < 5; ++p) {
        const HelsonImage probe =
            helson_unstack(map, st.cgaussian_vector(map.stacked_dim()));
        const ReproduceResult rr = reproduce_check(sys, dual, probe);
        d_rep = std::max({d_rep, rr.residual_dual_coefficients,
                          rr.residual_dual_frame});
      }
      std::vector<Eigen::VectorXcd> dual_vecs;
      for (const auto& im : dual) dual_vecs.push_back(helson_invert(map, im));
      const ModularSystem dual_sys = make_modular_system(map, dual_vecs);
      const ModularReport after = modular_classify(dual_sys);
      d_dual = std::max(
          d_dual, std::abs(after.lower - 1.0 / before.upper) /
                      std::max(1.0 / before.upper, 1e-300));
      d_dual = std::max(
          d_dual, std::abs(after.upper - 1.0 / before.lower) /
                      std::max(1.0 / before.lower, 1e-300));

      if (c.wants("modular.frame_conjugation")) {
        const Eigen::MatrixXcd mf = modular_frame_matrix(sys);
        const Eigen::MatrixXcd syn = synthesis_matrix(OrbitSystem{rep, gens});
        const Eigen::MatrixXcd w =
            rep.measure.cast<std::complex<double>>().asDiagonal();
        const Eigen::MatrixXcd fe = syn * syn.adjoint() * w;
        const Eigen::MatrixXcd conj = map.forward * fe * map.inverse;
        d_conj = std::max(d_conj, spectral_norm(mf - conj) /
                                      std::max(1e-300, spectral_norm(fe)));
      }
    }
    c.record("modular.reproducing", gs, rs, d_rep, "reproducing");
    c.record("modular.dual_bounds", gs, rs, d_dual, "dual_bounds");
    if (c.wants("modular.frame_conjugation"))
      c.record("modular.frame_conjugation", gs, rs, d_conj,
               "frame_conjugation");
  }

  if (c.wants("module.generator_span")) {
    rng::Stream st(c.sub("span/" + gs + "/" + rs));
    double d = 0.0;
    for (int t = 0; t < std::min(trials, 5); ++t) {
      const std::vector<Eigen::VectorXcd> gens = {
          st.cgaussian_vector(rep.dim), st.cgaussian_vector(rep.dim)};
      const SpanCheck sc = generator_span_check(
          map, gens, c.sub("span-inner/" + gs + "/" + rs + "/" +
                           std::to_string(t)));
      d = std::max(d, sc.pass ? sc.residual : 1.0);
    }
    c.record("module.generator_span", gs, rs, d, "span_rank");
  }
}

void pinned_checks(Ctx& c, const HelsonMap& map) {
  if (!c.wants("modular.main_pinned")) return;
  double d = 0.0;
  {
    Eigen::VectorXcd psi(2);
    psi << 1.0, 1.0;
    const MainTheoremRecord rec =
        main_theorem_check(map, {psi}, 10, c.sub("pinned/1"), 1e-9);
    if (rec.classical.classification != FrameClass::frame_sequence_not_riesz ||
        rec.modular.classification != ModularClass::modular_frame_not_riesz)
      d = 1.0;
    d = std::max(d, std::abs(rec.classical.lower - 4.0) / 4.0);
    d = std::max(d, std::abs(rec.classical.upper - 4.0) / 4.0);
    d = std::max(d, std::abs(rec.modular.lower - 4.0) / 4.0);
    d = std::max(d, std::abs(rec.modular.upper - 4.0) / 4.0);
  }
  {
    Eigen::VectorXcd psi(2);
    psi << 1.0, 0.5;
    const MainTheoremRecord rec =
        main_theorem_check(map, {psi}, 10, c.sub("pinned/2"), 1e-9);
    if (rec.classical.classification != FrameClass::riesz_basis_sequence ||
        rec.modular.classification != ModularClass::modular_riesz)
      d = 1.0;
    d = std::max(d, std::abs(rec.classical.lower - 0.25) / 0.25);
    d = std::max(d, std::abs(rec.classical.upper - 2.25) / 2.25);
    d = std::max(d, std::abs(rec.modular.lower - 0.25) / 0.25);
    d = std::max(d, std::abs(rec.modular.upper - 2.25) / 2.25);
  }
  c.record("modular.main_pinned", "z2", "translation", d, "main_theorem");
}

void negative_control_check(Ctx& c, const GroupPtr& z2,
                            const HelsonMap& map) {
  if (!c.wants("module.multiplicative_negative_control")) return;
  Eigen::VectorXcd delta0(2);
  delta0 << 1.0, 0.0;
  const VnOperator rho1_star = vn_delta(z2, 1);
  const double dist =
      multiplicative_defect(map, {delta0}, delta0, rho1_star);
  c.record("module.multiplicative_negative_control", "z2", "translation",
           std::max(0.0, 0.1 - dist), "negative_control");
}

}  // namespace

std::map<std::string, double> resolve_tolerances(const RunConfig& cfg) {
  auto tol = default_tolerances();
  for (const auto& [k, v] : cfg.tol_override) {
    if (!tol.count(k)) throw Error("unknown tolerance name: " + k);
    if (v <= 0 && k != "negative_control")
      throw Error("tolerance must be positive: " + k);
    tol[k] = v;
  }
  return tol;
}

GroupPtr parse_group_spec(const std::string& spec) {
  std::string s;
  for (char ch : spec) s.push_back(static_cast<char>(std::tolower(ch)));
  if (s.empty()) throw Error("empty group spec");
  if (s == "klein") return make_product(make_cyclic(2), make_cyclic(2));
  const auto xpos = s.find('x');
  if (xpos != std::string::npos)
    return make_product(parse_group_spec(s.substr(0, xpos)),
                        parse_group_spec(s.substr(xpos + 1)));
  const char kind = s[0];
  int n = 0;
  try {
    n = std::stoi(s.substr(1));
  } catch (...) {
    throw Error("unknown group spec: " + spec);
  }
  switch (kind) {
    case 'z': return make_cyclic(n);
    case 'd': return make_dihedral(n);
    case 'h': return make_heisenberg(n);
    default: throw Error("unknown group spec: " + spec);
  }
}

GroupAction standard_weighted_action(const GroupPtr& g) {
  GroupAction a;
  a.group = g;
  const int ng = g->order;
  a.set_size = 2 * ng;
  a.perm.assign(ng, std::vector<int>(a.set_size));
  Eigen::VectorXd w(a.set_size);
  for (int gp = 0; gp < ng; ++gp)
    for (int i = 0; i < 2; ++i)
      w(2 * gp + i) =
          gp == g->identity ? 1.0 : 1.0 + ((3 * gp + i) % 5) / 4.0;
  for (int gamma = 0; gamma < ng; ++gamma)
    for (int gp = 0; gp < ng; ++gp)
      for (int i = 0; i < 2; ++i)
        a.perm[gamma][2 * gp + i] = 2 * g->mul(gamma, gp) + i;
  a.jacobian.resize(ng, a.set_size);
  for (int gamma = 0; gamma < ng; ++gamma)
    for (int x = 0; x < a.set_size; ++x)
      a.jacobian(gamma, x) = w(a.perm[gamma][x]) / w(x);
  return a;
}

std::vector<int> standard_tile(const GroupPtr& g) {
  return {2 * g->identity, 2 * g->identity + 1};
}

GroupAction self_action(const GroupPtr& g) {
  GroupAction a;
  a.group = g;
  a.set_size = g->order;
  a.perm.assign(g->order, std::vector<int>(g->order));
  for (int gamma = 0; gamma < g->order; ++gamma)
    for (int x = 0; x < g->order; ++x) a.perm[gamma][x] = g->mul(gamma, x);
  a.jacobian = Eigen::MatrixXd::Ones(g->order, g->order);
  return a;
}

UnitaryRep build_rep(const std::string& spec, const GroupPtr& g,
                     std::uint64_t seed) {
  if (spec == "translation") return translation_rep(g);
  if (spec == "lambda2") {
    const UnitaryRep lam = translation_rep(g);
    return direct_sum({lam, lam});
  }
  if (spec == "conjugate") {
    rng::Stream st(rng::substream(seed, "rep/conjugate"));
    return conjugate(translation_rep(g), st.haar_unitary(g->order));
  }
  if (spec == "conjugate2") {
    rng::Stream st(rng::substream(seed, "rep/conjugate2"));
    const UnitaryRep lam = translation_rep(g);
    return conjugate(direct_sum({lam, lam}), st.haar_unitary(2 * g->order));
  }
  if (spec == "action")
    return action_rep_anchored(standard_weighted_action(g), standard_tile(g));
  throw Error("unknown representation spec: " + spec);
}

VerifyReport run_verify(const RunConfig& cfg) {
  if (cfg.trials < 1) throw Error("config: trials must be >= 1");
  Ctx c;
  c.cfg = &cfg;
  c.tol = resolve_tolerances(cfg);

  for (const auto& gs : cfg.groups) {
    const GroupPtr g = parse_group_spec(gs);
    vn_checks(c, gs, g);
    gram_equality_check(c, gs, g);
    zak_checks(c, gs, g);

    for (const auto& rs : cfg.reps) {
      const UnitaryRep rep = build_rep(rs, g, cfg.seed);
      bracket_checks(c, gs, rs, rep);
      bdr_checks(c, gs, rs, rep);

      const bool want_helson = c.wants("helson.isometry");
      const bool want_modular =
          c.wants("modular.main_theorem") || c.wants("modular.reproducing") ||
          c.wants("module.multiplicative_invariance") ||
          c.wants("modular.module_axioms") || c.wants("module.generator_span");
      if (!want_helson && !want_modular) continue;

      // The canonical Helson map of the triple: the Zak transform for
      // action representations, the global isometry otherwise.
      HelsonMap full_map;
      if (rs == "action") {
        const GroupAction act = standard_weighted_action(g);
        full_map = zak_map(act, make_tiling(act, standard_tile(g)));
      } else {
        full_map = global_map(rep, canonical_basis(rep.dim), true);
      }

      if (want_helson) {
        rng::Stream st(c.sub("helson/" + gs + "/" + rs));
        Eigen::VectorXcd psi = st.cgaussian_vector(rep.dim);
        psi /= norm(rep, psi);
        const HelsonMap pm = principal_map(rep, psi);
        helson_map_checks(c, gs, rs + "/principal", pm, st);
        helson_map_checks(c, gs, rs + "/global", full_map, st);
      }
      if (want_modular) modular_checks(c, gs, rs, rep, full_map);

      if (gs == "z2" && rs == "translation") {
        pinned_checks(c, full_map);
        negative_control_check(c, g, full_map);
      }
    }
  }

  std::sort(c.records.begin(), c.records.end(),
            [](const CheckRecord& a, const CheckRecord& b) {
              return std::tie(a.check_id, a.group, a.rep) <
                     std::tie(b.check_id, b.group, b.rep);
            });

  VerifyReport report;
  report.version = kVersion;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  report.suite = cfg.suite;
  report.groups = cfg.groups;
  report.reps = cfg.reps;
  report.checks = std::move(c.records);
  report.total = static_cast<int>(report.checks.size());
  for (const auto& r : report.checks)
    r.pass ? ++report.passed : ++report.failed;
  return report;
}

bool report_all_pass(const VerifyReport& r) { return r.failed == 0; }

std::string emit_report(const VerifyReport& r, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["version"] = r.version;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["suite"] = r.suite;
    j["groups"] = r.groups;
    j["reps"] = r.reps;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& ck : r.checks) {
      nlohmann::ordered_json cj;
      cj["check_id"] = ck.check_id;
      cj["group"] = ck.group;
      cj["rep"] = ck.rep;
      cj["max_defect"] = ck.max_defect;
      cj["threshold"] = ck.threshold;
      cj["pass"] = ck.pass;
      checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["summary"] = {{"total", r.total}, {"passed", r.passed},
                    {"failed", r.failed}};
    return j.dump(2) + "\n";
  }
  if (format == "table") {
    std::ostringstream out;
    if (r.checks.empty()) {
      out << "0 checks\n";
      return out.str();
    }
    char line[256];
    std::snprintf(line, sizeof(line), "%-36s %-8s %-22s %-12s %-12s %s\n",
                  "check", "group", "rep", "max_defect", "threshold", "status");
    out << line;
    for (const auto& ck : r.checks) {
      std::snprintf(line, sizeof(line), "%-36s %-8s %-22s %-12.3e %-12.3e %s\n",
                    ck.check_id.c_str(), ck.group.c_str(), ck.rep.c_str(),
                    ck.max_defect, ck.threshold, ck.pass ? "PASS" : "FAIL");
      out << line;
    }
    out << r.total << " checks, " << r.passed << " passed, " << r.failed
        << " failed\n";
    return out.str();
  }
  throw Error("unknown report format: " + format);
}

RunConfig full_registry_config() {
  RunConfig cfg;
  cfg.groups = {"z1", "z2", "z3", "z4", "z8", "z16", "klein", "z2xz4",
                "d3", "d4", "h2", "h3"};
  cfg.reps = {"translation", "lambda2", "conjugate", "conjugate2", "action"};
  cfg.trials = 50;
  cfg.seed = 7;
  cfg.suite = "all";
  return cfg;
}

}  // namespace vnframes
