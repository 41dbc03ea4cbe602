// vnframes CLI
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vnframes/json_io.hpp"
#include "vnframes/rng.hpp"
#include "vnframes/verify.hpp"

namespace {

using namespace vnframes;

GroupPtr load_group(const std::string& arg) {
  if (std::filesystem::exists(arg)) return group_from_json(load_json(arg));
  return parse_group_spec(arg);
}

UnitaryRep load_rep(const std::string& path) {
  return rep_from_json(load_json(path));
}

std::vector<Eigen::VectorXcd> load_generators(const std::string& path) {
  const Json j = load_json(path);
  std::vector<Eigen::VectorXcd> gens;
  for (const auto& v : j.at("vectors")) gens.push_back(vector_from_json(v));
  if (gens.empty()) throw Error("generator file holds no vectors");
  return gens;
}

void write_or_print(const std::string& out, const Json& j) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json(out, j);
}

HelsonMap full_space_map(const UnitaryRep& rep) {
  std::vector<Eigen::VectorXcd> basis;
  for (int i = 0; i < rep.dim; ++i) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(rep.dim);
    e(i) = 1.0;
    basis.push_back(std::move(e));
  }
  return global_map(rep, basis, true);
}

int run(int argc, char** argv) {
  CLI::App app{"finite-scale frames over group von Neumann algebras"};
  app.require_subcommand(1);

  // ---- group ----
  auto* group_cmd = app.add_subcommand("group", "construct and validate groups");
  auto* group_make = group_cmd->add_subcommand("make", "build a named group");
  std::string kind, params, out_path, lhs, rhs;
  group_make->add_option("--kind", kind, "cyclic|product|dihedral|heisenberg")
      ->required();
  group_make->add_option("--params", params, "n (cyclic/dihedral/heisenberg) or a,b (product of cyclics)");
  group_make->add_option("--lhs", lhs, "left factor (spec or file) for product");
  group_make->add_option("--rhs", rhs, "right factor (spec or file) for product");
  group_make->add_option("--out", out_path, "output path");
  group_make->callback([&] {
    GroupPtr g;
    if (kind == "cyclic" || kind == "dihedral" || kind == "heisenberg") {
      const int n = std::stoi(params);
      g = kind == "cyclic" ? make_cyclic(n)
          : kind == "dihedral" ? make_dihedral(n) : make_heisenberg(n);
    } else if (kind == "product") {
      if (!lhs.empty() && !rhs.empty()) {
        g = make_product(load_group(lhs), load_group(rhs));
      } else {
        const auto comma = params.find(',');
        if (comma == std::string::npos)
          throw Error("product needs --params a,b or --lhs/--rhs");
        g = make_product(make_cyclic(std::stoi(params.substr(0, comma))),
                         make_cyclic(std::stoi(params.substr(comma + 1))));
      }
    } else {
      throw Error("unknown group kind: " + kind);
    }
    write_or_print(out_path, group_to_json(*g));
  });

  auto* group_validate = group_cmd->add_subcommand("validate", "revalidate a group file");
  std::string group_in;
  group_validate->add_option("--in", group_in)->required();
  group_validate->callback([&] {
    const GroupPtr g = load_group(group_in);
    std::cout << "ok: order " << g->order << ", abelian "
              << (g->abelian ? "yes" : "no") << "\n";
  });

  // ---- rep ----
  auto* rep_cmd = app.add_subcommand("rep", "construct and validate representations");
  std::string rep_group, rep_action_path, rep_out, rep_in, rep_unitary;
  std::vector<std::string> rep_summands;
  std::uint64_t rep_seed = 1;

  auto* rep_tr = rep_cmd->add_subcommand("translation", "left regular representation");
  rep_tr->add_option("--group", rep_group)->required();
  rep_tr->add_option("--out", rep_out);
  rep_tr->callback([&] {
    write_or_print(rep_out, rep_to_json(translation_rep(load_group(rep_group))));
  });

  auto* rep_act = rep_cmd->add_subcommand("action", "measurable-action representation");
  rep_act->add_option("--action", rep_action_path)->required();
  rep_act->add_option("--out", rep_out);
  rep_act->callback([&] {
    const GroupAction a = action_from_json(load_json(rep_action_path));
    write_or_print(rep_out, rep_to_json(action_rep(a)));
  });

  auto* rep_sum = rep_cmd->add_subcommand("direct-sum", "block direct sum");
  rep_sum->add_option("--in", rep_summands, "summand rep files")->required();
  rep_sum->add_option("--out", rep_out);
  rep_sum->callback([&] {
    std::vector<UnitaryRep> parts;
    for (const auto& p : rep_summands) parts.push_back(load_rep(p));
    write_or_print(rep_out, rep_to_json(direct_sum(parts)));
  });

  auto* rep_conj = rep_cmd->add_subcommand("conjugate", "unitary conjugation");
  rep_conj->add_option("--in", rep_in)->required();
  rep_conj->add_option("--unitary", rep_unitary, "unitary matrix file");
  rep_conj->add_option("--seed", rep_seed, "seed for a random unitary");
  rep_conj->add_option("--out", rep_out);
  rep_conj->callback([&] {
    const UnitaryRep rep = load_rep(rep_in);
    Eigen::MatrixXcd u;
    if (!rep_unitary.empty()) {
      u = matrix_from_json(load_json(rep_unitary));
    } else {
      rng::Stream st(rep_seed);
      u = st.haar_unitary(rep.dim);
    }
    write_or_print(rep_out, rep_to_json(conjugate(rep, u)));
  });

  auto* rep_val = rep_cmd->add_subcommand("validate", "report representation defects");
  rep_val->add_option("--in", rep_in)->required();
  rep_val->callback([&] {
    const RepDiagnostics d = validate(load_rep(rep_in));
    Json j;
    j["unitarity_defect"] = d.unitarity_defect;
    j["homomorphism_defect"] = d.homomorphism_defect;
    j["identity_defect"] = d.identity_defect;
    std::cout << j.dump(2) << "\n";
  });

  // ---- op ----
  auto* op_cmd = app.add_subcommand("op", "operator calculus in L^p(R(Gamma))");
  std::string op_in, op_matrix, op_group, op_out, op_p = "2";

  auto* op_m = op_cmd->add_subcommand("matrix", "right-convolution matrix of an operator");
  op_m->add_option("--op", op_in)->required();
  op_m->add_option("--out", op_out);
  op_m->callback([&] {
    write_or_print(op_out, matrix_to_json(to_matrix(vn_from_json(load_json(op_in)))));
  });

  auto* op_c = op_cmd->add_subcommand("coeffs", "Fourier coefficients of an affiliated matrix");
  op_c->add_option("--matrix", op_matrix)->required();
  op_c->add_option("--group", op_group)->required();
  op_c->add_option("--out", op_out);
  op_c->callback([&] {
    const VnOperator f = fourier_coefficients(
        matrix_from_json(load_json(op_matrix)), load_group(op_group));
    write_or_print(op_out, vn_to_json(f));
  });

  auto* op_n = op_cmd->add_subcommand("norm", "tau-normalized p-norm");
  op_n->add_option("--op", op_in)->required();
  op_n->add_option("--p", op_p, "p in [1,inf], or the word inf");
  op_n->callback([&] {
    const double p = op_p == "inf"
                         ? std::numeric_limits<double>::infinity()
                         : std::stod(op_p);
    std::cout << p_norm(vn_from_json(load_json(op_in)), p) << "\n";
  });

  auto* op_s = op_cmd->add_subcommand("support", "support projection");
  op_s->add_option("--op", op_in)->required();
  op_s->add_option("--out", op_out);
  op_s->callback([&] {
    write_or_print(op_out, vn_to_json(support_projection(vn_from_json(load_json(op_in)))));
  });

  auto* op_e = op_cmd->add_subcommand("spectrum", "eigenvalues of a self-adjoint operator");
  op_e->add_option("--op", op_in)->required();
  op_e->callback([&] {
    const SpectralData sd = spectral(vn_from_json(load_json(op_in)));
    Json arr = Json::array();
    for (int i = 0; i < sd.eigenvalues.size(); ++i)
      arr.push_back(sd.eigenvalues(i));
    Json j;
    j["eigenvalues"] = std::move(arr);
    j["rank_tol"] = sd.rank_tol;
    std::cout << j.dump(2) << "\n";
  });

  // ---- bracket ----
  auto* br_cmd = app.add_subcommand("bracket", "bracket map of two vectors");
  std::string br_rep, br_phi, br_psi, br_out;
  br_cmd->add_option("--rep", br_rep)->required();
  br_cmd->add_option("--phi", br_phi)->required();
  br_cmd->add_option("--psi", br_psi)->required();
  br_cmd->add_option("--out", br_out);
  br_cmd->callback([&] {
    const UnitaryRep rep = load_rep(br_rep);
    const VnOperator b =
        bracket(rep, vector_from_json(load_json(br_phi)),
                vector_from_json(load_json(br_psi)));
    write_or_print(br_out, vn_to_json(b));
  });

  // ---- frame-bounds ----
  auto* fb_cmd = app.add_subcommand("frame-bounds", "classify an orbit system");
  std::string fb_rep, fb_gens, fb_out;
  fb_cmd->add_option("--rep", fb_rep)->required();
  fb_cmd->add_option("--generators", fb_gens)->required();
  fb_cmd->add_option("--out", fb_out);
  fb_cmd->callback([&] {
    const OrbitSystem sys{load_rep(fb_rep), load_generators(fb_gens)};
    write_or_print(fb_out, frame_report_to_json(classify(sys)));
  });

  // ---- helson ----
  auto* hl_cmd = app.add_subcommand("helson", "apply a Helson map to a probe vector");
  std::string hl_rep, hl_gens, hl_probe, hl_out, hl_kind = "global";
  hl_cmd->add_option("--rep", hl_rep)->required();
  hl_cmd->add_option("--generators", hl_gens)->required();
  hl_cmd->add_option("--probe", hl_probe)->required();
  hl_cmd->add_option("--kind", hl_kind, "principal|global");
  hl_cmd->add_option("--out", hl_out);
  hl_cmd->callback([&] {
    const UnitaryRep rep = load_rep(hl_rep);
    const auto gens = load_generators(hl_gens);
    const HelsonMap map = hl_kind == "principal"
                              ? principal_map(rep, gens.at(0))
                              : global_map(rep, gens, true);
    const HelsonImage img =
        helson_apply(map, vector_from_json(load_json(hl_probe)));
    write_or_print(hl_out, image_to_json(img));
  });

  // ---- zak ----
  auto* zk_cmd = app.add_subcommand("zak", "noncommutative Zak transform");
  std::string zk_action, zk_tile, zk_vec, zk_out;
  zk_cmd->add_option("--action", zk_action)->required();
  zk_cmd->add_option("--tile", zk_tile)->required();
  zk_cmd->add_option("--vector", zk_vec)->required();
  zk_cmd->add_option("--out", zk_out);
  zk_cmd->callback([&] {
    const GroupAction a = action_from_json(load_json(zk_action));
    const TilingData t = make_tiling(a, tile_from_json(load_json(zk_tile)));
    const HelsonMap map = zak_map(a, t);
    const HelsonImage img =
        helson_apply(map, vector_from_json(load_json(zk_vec)));
    write_or_print(zk_out, image_to_json(img));
  });

  // ---- modular-bounds ----
  auto* mb_cmd = app.add_subcommand("modular-bounds", "classify the modular system of the generators");
  std::string mb_rep, mb_gens, mb_out;
  mb_cmd->add_option("--rep", mb_rep)->required();
  mb_cmd->add_option("--generators", mb_gens)->required();
  mb_cmd->add_option("--out", mb_out);
  mb_cmd->callback([&] {
    const UnitaryRep rep = load_rep(mb_rep);
    const ModularSystem sys =
        make_modular_system(full_space_map(rep), load_generators(mb_gens));
    write_or_print(mb_out, modular_report_to_json(modular_classify(sys)));
  });

  // ---- dual-frame ----
  auto* df_cmd = app.add_subcommand("dual-frame", "canonical modular dual of the generators");
  std::string df_rep, df_gens, df_out;
  df_cmd->add_option("--rep", df_rep)->required();
  df_cmd->add_option("--generators", df_gens)->required();
  df_cmd->add_option("--out", df_out);
  df_cmd->callback([&] {
    const UnitaryRep rep = load_rep(df_rep);
    const HelsonMap map = full_space_map(rep);
    const ModularSystem sys =
        make_modular_system(map, load_generators(df_gens));
    const auto dual = canonical_dual(sys);
    Json j;
    Json arr = Json::array();
    for (const auto& im : dual) arr.push_back(image_to_json(im));
    j["duals"] = std::move(arr);
    std::vector<Eigen::VectorXcd> dual_vecs;
    for (const auto& im : dual) dual_vecs.push_back(helson_invert(map, im));
    j["dual_bounds"] = modular_report_to_json(
        modular_classify(make_modular_system(map, dual_vecs)));
    write_or_print(df_out, j);
  });

  // ---- verify ----
  auto* vf_cmd = app.add_subcommand("verify", "run the theorem verification suites");
  RunConfig cfg;
  std::string vf_groups, vf_reps, vf_out, vf_format = "json";
  std::vector<std::string> vf_tols;
  bool vf_full = false;
  vf_cmd->add_option("--suite", cfg.suite, "all|vn|bracket|bracket-axioms|helson|modular|main");
  vf_cmd->add_option("--groups", vf_groups, "comma-separated group specs");
  vf_cmd->add_option("--reps", vf_reps, "comma-separated representation specs");
  vf_cmd->add_option("--trials", cfg.trials);
  vf_cmd->add_option("--seed", cfg.seed);
  vf_cmd->add_option("--tol", vf_tols, "override: name=value (repeatable)");
  vf_cmd->add_option("--format", vf_format, "json|table");
  vf_cmd->add_option("--out", vf_out, "write the report here instead of stdout");
  vf_cmd->add_flag("--full-registry", vf_full, "use the full acceptance registry");
  vf_cmd->callback([&] {
    if (vf_full) {
      const std::string suite = cfg.suite;
      const int trials = cfg.trials;
      const std::uint64_t seed = cfg.seed;
      cfg = full_registry_config();
      cfg.suite = suite;
      cfg.trials = trials;
      cfg.seed = seed;
    }
    auto split = [](const std::string& s) {
      std::vector<std::string> parts;
      std::string cur;
      for (char ch : s) {
        if (ch == ',') {
          if (!cur.empty()) parts.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(ch);
        }
      }
      if (!cur.empty()) parts.push_back(cur);
      return parts;
    };
    if (!vf_groups.empty()) cfg.groups = split(vf_groups);
    if (!vf_reps.empty()) cfg.reps = split(vf_reps);
    for (const auto& t : vf_tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw Error("bad --tol, expected name=value");
      cfg.tol_override[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }
    if (const char* env = std::getenv("VNFRAMES_SEED"))
      cfg.seed = std::strtoull(env, nullptr, 10);

    const VerifyReport report = run_verify(cfg);
    const std::string text = emit_report(report, vf_format);
    if (vf_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(vf_out);
      if (!f) throw Error("cannot write " + vf_out);
      f << text;
    }
    if (!report_all_pass(report)) std::exit(1);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const vnframes::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
