// vnframes/verify.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef VNFRAMES_VERIFY_HPP
#define VNFRAMES_VERIFY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vnframes/modular.hpp"

namespace vnframes {

/// Configuration of a verification run. Group and representation specs
/// are short strings: z<n>, z<a>x<b>, klein, d<n>, h<p> for groups;
/// translation, lambda2, conjugate, conjugate2, action for representations.
struct RunConfig {
  std::vector<std::string> groups = {"z2", "z4", "klein", "d3", "d4", "h2"};
  std::vector<std::string> reps = {"translation", "conjugate2"};
  int trials = 50;
  std::uint64_t seed = 7;
  std::string suite = "all";  // all|vn|bracket|bracket-axioms|helson|modular|main
  std::map<std::string, double> tol_override;
};

struct CheckRecord {
  std::string check_id;
  std::string group;
  std::string rep;
  double max_defect = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string version;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string suite;
  std::vector<std::string> groups;
  std::vector<std::string> reps;
  std::vector<CheckRecord> checks;
  int total = 0;
  int passed = 0;
  int failed = 0;
};

/// Named tolerance registry with the built-in defaults applied first and
/// config overrides on top.
std::map<std::string, double> resolve_tolerances(const RunConfig& cfg);

GroupPtr parse_group_spec(const std::string& spec);
UnitaryRep build_rep(const std::string& spec, const GroupPtr& g,
                     std::uint64_t seed);

/// Weighted two-orbit action on Gamma x {0,1} with a deterministic
/// non-constant Jacobian; tile {(e,0), (e,1)}.
GroupAction standard_weighted_action(const GroupPtr& g);
std::vector<int> standard_tile(const GroupPtr& g);

/// Gamma acting on itself by left multiplication, J = 1, tile {e}.
GroupAction self_action(const GroupPtr& g);

VerifyReport run_verify(const RunConfig& cfg);

bool report_all_pass(const VerifyReport& r);

/// format is "json" or "table"; both have stable field ordering so a
/// rerun with the same config is byte-identical.
std::string emit_report(const VerifyReport& r, const std::string& format);

/// The acceptance registry: every test group and representation family.
RunConfig full_registry_config();

}  // namespace vnframes

#endif  // VNFRAMES_VERIFY_HPP
