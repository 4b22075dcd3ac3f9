#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "ufpot/harness.hpp"

namespace ufpot {

inline constexpr int report_schema_version = 1;

namespace detail {

inline nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

inline nlohmann::json constants_json(const accounting_constants& c) {
  nlohmann::json j;
  const auto row = [](const kind_constants& k) {
    return nlohmann::json{{"slope", k.slope}, {"additive", k.additive}, {"events", k.events}, {"run_bound", k.run_bound}};
  };
  j["sqrt"] = row(c.sqrt_size);
  j["logsq"] = row(c.log_squared);
  j["level1"] = row(c.level1);
  j["level2"] = row(c.level2);
  j["ack"] = row(c.ack);
  return j;
}

}  // namespace detail

inline nlohmann::json to_json(const run_report& r) {
  using nlohmann::json;
  json j;
  j["schema_version"] = report_schema_version;

  json kinds = json::array();
  for (const auto& k : r.kinds) kinds.push_back(k.name());
  j["config"] = {{"n", r.n},
                 {"variant", to_string(r.v)},
                 {"kinds", kinds},
                 {"constants", detail::constants_json(r.constants)},
                 {"generator", r.generator},
                 {"seed", r.seed ? json(*r.seed) : json()},
                 {"organic", r.organic},
                 {"oracle_active", r.oracle_active},
                 // finds issued inside a union are accounted as find paths
                 {"union_finds_accounted", true}};

  j["counts"] = {{"steps", r.steps},         {"unions", r.unions},         {"merges", r.merges},
                 {"finds_count", r.finds_count}, {"find_paths", r.find_paths}, {"stopped_early", r.stopped_early}};

  json verdicts = json::object();
  for (const auto& t : r.criteria) {
    json v = {{"checks", t.checks}, {"failures", t.failures},
              {"status", t.checks == 0 ? "skip" : (t.failures == 0 ? "pass" : "fail")}};
    if (!t.first_failure.empty()) v["first_failure"] = t.first_failure;
    verdicts[t.name] = v;
  }
  j["verdicts"] = verdicts;

  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"criterion", v.criterion}, {"step", v.step}, {"detail", v.detail}});
  j["violations"] = violations;
  j["violation_count"] = r.violation_count;

  j["lemma4"] = {{"charged_sum", r.lemma4.charged_sum},
                 {"bound", r.lemma4.bound},
                 {"asserted", r.lemma4_asserted},
                 {"ok", r.lemma4.ok},
                 {"histogram", r.lemma4.histogram}};

  json pots = json::object();
  for (const auto& s : r.summaries) {
    pots[s.kind.name()] = {{"phi_initial", s.phi_initial},
                           {"phi_final", s.phi_final},
                           {"union_increase", s.gross_increase},
                           {"union_increase_bound", s.increase_bound ? json(*s.increase_bound) : json()},
                           {"total_delta_phi", s.total_delta_phi},
                           {"min_find_delta", s.min_find_delta},
                           {"accounted_finds", s.applicable_finds},
                           {"accounted_edges", s.total_edges},
                           {"accounted_bound", s.total_bound},
                           {"max_amortized", detail::finite_or_null(s.max_amortized)},
                           {"max_events", s.max_events}};
  }
  j["potentials"] = pots;
  j["ack"] = {{"l_above_r_at_r0", r.ack_l_above_r_at_zero},
              {"max_failing_nodes", r.ack_max_failing_nodes},
              {"max_failing_groups", r.ack_max_failing_groups}};

  const auto& b = r.bounds;
  j["bounds"] = {{"n", b.n},         {"log2", b.log2n},           {"log2log2", b.log2log2n}, {"log_star", b.log_star},
                 {"loghat_star", b.loghat_star}, {"loghat_star2", b.loghat2}, {"alpha", b.alpha}};
  j["passed"] = r.passed();
  return j;
}

/// step,path_nodes,path_edges then <KIND>_delta_phi,<KIND>_events,<KIND>_verdict
/// for each configured kind.
inline void write_finds_csv(std::ostream& os, const run_report& r) {
  os << "step,path_nodes,path_edges";
  for (const auto& k : r.kinds) os << ',' << k.name() << "_delta_phi," << k.name() << "_events," << k.name() << "_verdict";
  os << '\n';
  os.precision(17);
  for (const auto& row : r.rows) {
    os << row.step << ',' << row.path_nodes << ',' << (row.path_nodes ? row.path_nodes - 1 : 0);
    for (const auto& c : row.cells) os << ',' << c.delta_phi << ',' << c.events << ',' << c.verdict;
    os << '\n';
  }
}

}  // namespace ufpot
