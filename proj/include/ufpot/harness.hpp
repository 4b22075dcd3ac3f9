#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ufpot/ackermann.hpp"
#include "ufpot/disjoint_set.hpp"
#include "ufpot/instrument.hpp"
#include "ufpot/potentials.hpp"
#include "ufpot/shadow_forest.hpp"
#include "ufpot/workloads.hpp"

namespace ufpot {

struct harness_options {
  variant v{};
  std::vector<potential_kind> kinds = default_kinds();
  std::size_t oracle_cap = 256;  // the descendant-set oracle runs when n <= cap
  bool fail_fast = false;
  accounting_constants constants{};
  std::uint64_t sweep_interval = 0;  // full per-node sweep period; 0 picks n (every step under the oracle)
  bool keep_find_rows = true;
  std::size_t max_violations = 1000;  // stored, not counted
};

struct violation {
  std::string criterion;
  std::uint64_t step;
  std::string detail;
};

struct tally {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
};

struct find_cell {
  double delta_phi;
  std::size_t events;
  const char* verdict;  // "pass", "fail" or "skip"
};

struct find_row {
  std::uint64_t step;
  std::uint8_t sub;
  std::size_t path_nodes;
  std::vector<find_cell> cells;  // one per configured kind
};

struct kind_summary {
  potential_kind kind;
  double phi_initial = 0.0;
  double phi_final = 0.0;
  double gross_increase = 0.0;  // potential of each loser right after its link
  std::optional<double> increase_bound;
  double total_delta_phi = 0.0;
  double min_find_delta = 0.0;
  std::uint64_t applicable_finds = 0;
  std::uint64_t total_edges = 0;   // over applicable finds
  double total_bound = 0.0;        // sum of slope * delta + additive over applicable finds
  double max_amortized = -std::numeric_limits<double>::infinity();
  std::size_t max_events = 0;
};

struct run_report {
  std::uint64_t n = 0;
  variant v{};
  std::vector<potential_kind> kinds;
  accounting_constants constants{};
  std::string generator;
  std::optional<std::uint64_t> seed;
  bool organic = true;
  bool oracle_active = false;
  bool stopped_early = false;
  std::uint64_t steps = 0;
  std::uint64_t unions = 0;
  std::uint64_t merges = 0;
  std::uint64_t finds_count = 0;  // external finds
  std::uint64_t find_paths = 0;   // every find, including the two inside each union
  std::vector<tally> criteria;
  std::vector<violation> violations;
  std::uint64_t violation_count = 0;
  lemma4_result lemma4;
  bool lemma4_asserted = false;
  std::vector<kind_summary> summaries;
  bound_row bounds{};
  std::vector<find_row> rows;
  std::uint64_t ack_l_above_r_at_zero = 0;  // l_i > r_i with r_i = 0; such nodes carry no potential
  std::size_t ack_max_failing_nodes = 0;
  std::size_t ack_max_failing_groups = 0;

  [[nodiscard]] bool passed() const { return violation_count == 0; }

  [[nodiscard]] const tally* criterion(const std::string& name) const {
    for (const auto& t : criteria)
      if (t.name == name) return &t;
    return nullptr;
  }
};

/// True when the forest satisfies the max-size balance the analysis relies
/// on: size_max doubles along every parent edge under union-by-size, or ranks
/// increase and size_max >= 2^rank under union-by-rank.
inline bool balanced_forest(const instrument_state& st) {
  for (std::size_t i = 0; i < st.element_count(); ++i) {
    const auto p = static_cast<node_id>(i);
    if (st.get_variant().link == link_rule::by_rank) {
      if (st.rank(p) >= 63 || st.size_max(p) < (std::uint64_t{1} << st.rank(p))) return false;
      if (!st.is_root(p) && st.rank(st.parent(p)) < st.rank(p) + 1) return false;
    } else if (!st.is_root(p) && st.size_max(st.parent(p)) < 2 * st.size_max(p)) {
      return false;
    }
  }
  return true;
}

class checked_run;

struct run_observer {
  checked_run* self = nullptr;
  void on_step_begin(step_kind kind, std::uint64_t step);
  void on_find_path(std::span<const node_id> path, find_context ctx);
  void on_parent_change(const parent_change_event& ev);
  void on_find_done(std::span<const node_id> path, find_context ctx);
  void on_step_end(step_kind kind, std::uint64_t step);
};

/// Replays operations on an observed disjoint set and checks every invariant,
/// oracle agreement and potential accounting as it goes.
class checked_run {
 public:
  using dsu_type = basic_disjoint_set<run_observer>;

  checked_run(std::uint64_t n, std::span<const std::pair<node_id, node_id>> prelude, harness_options opts)
      : opts_(std::move(opts)),
        n_(n),
        inst_(make_inst(n, prelude, opts_.v)),
        dsu_(make_dsu(n, prelude, opts_.v)) {
    observer_.self = this;
    dsu_.subscribe(observer_);
    ctx_ = potential_context::for_elements(n);
    int max_level = 0;
    for (const auto& k : opts_.kinds)
      if (k.family == potential_family::level) max_level = std::max(max_level, k.level);
    if (max_level > 0 && n <= (std::uint64_t{1} << 22)) {
      levels_ = std::make_unique<level_table>(max_level, n);
      ctx_.levels = levels_.get();
    }
    acks_ = std::make_unique<ack_table>(ctx_.alpha_n);
    ctx_.acks = acks_.get();

    if (n <= opts_.oracle_cap) {
      if (prelude.empty()) shadow_.emplace(n);
      else shadow_.emplace(shadow_forest::from_parents(dsu_.parents()));
    }
    report_.n = n;
    report_.v = opts_.v;
    report_.kinds = opts_.kinds;
    report_.constants = opts_.constants;
    report_.oracle_active = shadow_.has_value();
    report_.bounds = bounds_for(n);
    report_.organic = prelude.empty() || balanced_forest(inst_);
    scope_.size_balanced = report_.organic && opts_.v.link == link_rule::by_size;
    scope_.rank_ordered = report_.organic;
    interval_ = opts_.sweep_interval ? opts_.sweep_interval : (shadow_ ? 1 : std::max<std::uint64_t>(n, 1));

    register_criteria();
    touched_stamp_.assign(n, 0);
    before_size_.assign(n, 0);
    before_root_.assign(n, 0);
    last_nonroot_.assign(n, 0);
    last_phi_.assign(opts_.kinds.size(), std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = static_cast<node_id>(i);
      if (!inst_.is_root(p)) inst_.set_parent_size_max_seen(p, inst_.size_max(inst_.parent(p)));
    }
    for (std::size_t k = 0; k < opts_.kinds.size(); ++k) {
      kind_summary s;
      s.kind = opts_.kinds[k];
      s.phi_initial = overall_potential(opts_.kinds[k], inst_, ctx_);
      report_.summaries.push_back(s);
    }
    sweep(false);
  }

  checked_run(const checked_run&) = delete;
  checked_run& operator=(const checked_run&) = delete;

  /// Applies one operation unless a fail-fast stop is pending.
  void apply(const trace_op& op) {
    if (stopped_) return;
    if (op.what == trace_op::kind::unite) {
      ++report_.unions;
      if (dsu_.unite(op.a, op.b).merged) ++report_.merges;
    } else {
      ++report_.finds_count;
      dsu_.find_with_path(op.a);
    }
    if (opts_.fail_fast && report_.violation_count > 0) {
      stopped_ = true;
      report_.stopped_early = true;
    }
  }

  /// Runs the end-of-run checks and returns the report.
  run_report finish() {
    sweep(true);
    const std::uint64_t step = report_.steps;
    const bool organic = report_.organic;

    report_.lemma4 = check_lemma4(inst_);
    report_.lemma4_asserted = organic;
    if (organic) note(c_lemma4_, report_.lemma4.ok, step, [&] {
      return "charged sum " + std::to_string(report_.lemma4.charged_sum) + " > " + std::to_string(report_.lemma4.bound);
    });
    if (shadow_) {
      for (std::size_t i = 0; i < n_; ++i) {
        const auto p = static_cast<node_id>(i);
        note(c_ever_size_, inst_.size_max(p) == shadow_->ever_size(p), step, [&] {
          return "node " + std::to_string(p) + " size_max " + std::to_string(inst_.size_max(p)) + " vs ever " +
                 std::to_string(shadow_->ever_size(p));
        });
      }
    }
    for (std::size_t k = 0; k < opts_.kinds.size(); ++k) {
      auto& s = report_.summaries[k];
      const auto& kind = s.kind;
      s.phi_final = overall_potential(kind, inst_, ctx_);
      const auto& idx = kc_[k];
      const double scale = 1.0 + s.phi_initial + s.gross_increase;
      note(idx.find_delta_nonneg, s.min_find_delta >= -1e-9 * scale, step,
           [&] { return "a find decreased the potential by " + std::to_string(s.min_find_delta); });
      note(idx.conservation, s.total_delta_phi <= s.phi_initial + s.gross_increase - s.phi_final + 1e-9 * scale,
           step, [&] {
             return "find decreases " + std::to_string(s.total_delta_phi) + " exceed initial + union increase - final = " +
                    std::to_string(s.phi_initial + s.gross_increase - s.phi_final);
           });
      if (organic) {
        const kind_constants* c = opts_.constants.for_kind(kind);
        std::optional<double> bound;
        if (c) bound = run_increase_bound(kind, *c, n_);
        else if (kind.family == potential_family::level) bound = 3.5 * kind.level * static_cast<double>(n_);
        if (bound) {
          s.increase_bound = bound;
          note(idx.run_increase, s.gross_increase <= *bound, step, [&] {
            return "total union increase " + std::to_string(s.gross_increase) + " > " + std::to_string(*bound);
          });
        }
      }
      if (s.applicable_finds > 0)
        note(idx.run_total, static_cast<double>(s.total_edges) <= s.total_bound + 1e-9 * s.total_bound, step, [&] {
          return "total find cost " + std::to_string(s.total_edges) + " > " + std::to_string(s.total_bound);
        });
    }
    report_.steps = dsu_.op_clock();
    return report_;
  }

  [[nodiscard]] const dsu_type& dsu() const noexcept { return dsu_; }
  [[nodiscard]] const instrument_state& instruments() const noexcept { return inst_; }
  [[nodiscard]] const std::optional<shadow_forest>& shadow() const noexcept { return shadow_; }
  [[nodiscard]] const potential_context& context() const noexcept { return ctx_; }
  [[nodiscard]] const run_report& report() const noexcept { return report_; }
  [[nodiscard]] bool stopped() const noexcept { return stopped_; }

  // Observer hooks, forwarded by run_observer.

  void step_begin(step_kind, std::uint64_t step) {
    inst_.begin_step(step);
    report_.steps = step;
    touched_.clear();
    winner_ = loser_ = std::nullopt;
    if (shadow_) {
      before_all_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        const auto p = static_cast<node_id>(i);
        before_all_[i] = {p, shadow_->size(p), shadow_->is_root(p)};
      }
    }
  }

  void find_path(std::span<const node_id> path, find_context fc) {
    ++report_.find_paths;
    snap_.step = fc.step;
    snap_.sub = fc.sub;
    snap_.compressed = opts_.v.compress == compression::on;
    snap_.nodes.clear();
    for (node_id x : path) {
      touch(x);
      snap_.nodes.push_back({x, inst_.size(x), inst_.size_max(x), inst_.r(x)});
    }
    if (report_.organic) {
      bool grows = true;
      for (std::size_t i = 0; i + 1 < snap_.nodes.size(); ++i) {
        const auto& a = snap_.nodes[i];
        const auto& b = snap_.nodes[i + 1];
        grows = grows && (opts_.v.link == link_rule::by_size ? b.size_max >= 2 * a.size_max : b.r >= a.r + 1);
      }
      note(c_path_growth_, grows, fc.step, [&] { return "find path does not grow geometrically"; });
    }
  }

  void parent_change(const parent_change_event& ev) {
    std::uint64_t old_s = 0;
    std::uint32_t old_r = 0;
    if (ev.cause == change_cause::union_link) {
      old_s = inst_.size_max(ev.new_parent);
      old_r = inst_.r(ev.new_parent);
    }
    inst_.observe(ev);
    if (shadow_) shadow_->apply(ev);
    if (ev.cause != change_cause::union_link) return;

    loser_ = ev.node;
    winner_ = ev.new_parent;
    touch(ev.node);
    touch(ev.new_parent);
    const std::uint64_t new_s = inst_.size_max(ev.new_parent);
    const std::uint32_t new_r = inst_.r(ev.new_parent);
    for (std::size_t k = 0; k < opts_.kinds.size(); ++k) {
      const auto& kind = opts_.kinds[k];
      report_.summaries[k].gross_increase += phi(kind, ev.node, inst_, ctx_);
      // Children of the winner see a larger parent; their potential may only fall.
      if (kind.family == potential_family::level && new_s != old_s) {
        const double before = ctx_.level_factor_of(kind.level, old_s);
        const double after = ctx_.level_factor_of(kind.level, new_s);
        note(kc_[k].monotone, after <= before + 1e-12, ev.step, [&] {
          return "level factor rose from " + std::to_string(before) + " to " + std::to_string(after);
        });
      } else if (kind.family == potential_family::ackermann && new_r != old_r) {
        bool ok = true;
        for (std::uint32_t r = 0; r < std::min<std::uint32_t>(new_r, 64); ++r)
          ok = ok && ctx_.ack_of(r, new_r) <= ctx_.ack_of(r, old_r);
        note(kc_[k].monotone, ok, ev.step, [&] { return "ACK potential of a winner's child rose"; });
      }
    }
  }

  void find_done(std::span<const node_id>, find_context fc) {
    find_row row{fc.step, fc.sub, snap_.nodes.size(), {}};
    const std::size_t edges = snap_.path_edges();
    for (std::size_t k = 0; k < opts_.kinds.size(); ++k) {
      const auto& kind = opts_.kinds[k];
      const auto& idx = kc_[k];
      auto& s = report_.summaries[k];
      const kind_find_result res = account_find(kind, snap_, ctx_, opts_.constants, scope_);

      // The predicted post-find potentials must match the live state.
      bool matches = true;
      for (std::size_t i = 0; i < edges; ++i) {
        const double live = phi(kind, snap_.nodes[i].node, inst_, ctx_);
        matches = matches && std::abs(live - res.after[i]) <= 1e-9 * std::max(1.0, std::abs(live));
      }
      note(idx.path_update, matches, fc.step, [&] { return "path potentials after the find differ from the state"; });
      note(idx.monotone, res.monotone, fc.step);
      note(idx.bounded, res.bounded, fc.step);

      s.total_delta_phi += res.delta_phi;
      s.min_find_delta = std::min(s.min_find_delta, res.delta_phi);
      if (res.applicable) {
        ++s.applicable_finds;
        s.total_edges += edges;
        const kind_constants* c = opts_.constants.for_kind(kind);
        s.total_bound += c->slope * res.delta_phi + res.additive;
        s.max_amortized = std::max(s.max_amortized, res.amortized);
        s.max_events = std::max(s.max_events, res.events);
        note(idx.accounting, res.accounting, fc.step);
        note(idx.events, res.event_bound, fc.step);
        note(idx.dichotomy, res.dichotomy, fc.step);
        if (kind.family == potential_family::log_squared) note(idx.derivative, res.derivative, fc.step);
        if (res.ack) {
          const auto& d = *res.ack;
          note(c_ack_defined_, d.well_defined, fc.step);
          note(c_ack_k_, d.k_bound, fc.step);
          note(c_ack_l_, d.l_bound_r_pos, fc.step);
          note(c_ack_group_, d.group_drop, fc.step);
          note(c_ack_groups_, d.failing_groups <= ctx_.alpha_n + 1, fc.step, [&] {
            return std::to_string(d.failing_groups) + " k-groups failed to drop";
          });
          for (const auto& e : d.entries)
            if (e.r == 0 && e.l > e.r) ++report_.ack_l_above_r_at_zero;
          report_.ack_max_failing_nodes = std::max(report_.ack_max_failing_nodes, d.failing_nodes);
          report_.ack_max_failing_groups = std::max(report_.ack_max_failing_groups, d.failing_groups);
        }
      }
      if (opts_.keep_find_rows) {
        const char* verdict = res.ok() ? (res.applicable ? "pass" : "skip") : "fail";
        row.cells.push_back({res.delta_phi, res.events, verdict});
      }
    }
    if (opts_.keep_find_rows) report_.rows.push_back(std::move(row));
  }

  void step_end(step_kind, std::uint64_t step) {
    // Roots never shrink, non-roots never grow.
    if (shadow_) {
      std::vector<size_sample> after(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        const auto p = static_cast<node_id>(i);
        after[i] = {p, shadow_->size(p), shadow_->is_root(p)};
      }
      note(c_lemma1_, check_lemma1(before_all_, after, step), step);
    } else {
      std::vector<size_sample> before;
      std::vector<size_sample> after;
      for (node_id p : touched_) {
        before.push_back({p, before_size_[p], before_root_[p] != 0});
        after.push_back({p, inst_.size(p), inst_.is_root(p)});
      }
      note(c_lemma1_, check_lemma1(before, after, step), step);
    }

    // Parent max sizes only grow and stay at least double.
    const lemma23_verdict l23 = shadow_ ? check_lemma2_3(inst_, step, report_.organic)
                                        : check_lemma2_3(inst_, touched_, step, report_.organic);
    note(c_lemma2_, l23.parent_monotone, step);
    if (report_.organic) note(c_lemma3_, l23.balance, step);

    if (shadow_) oracle_checks(step);
    if (step % interval_ == 0) sweep(true);
  }

 private:
  struct kind_criteria {
    std::size_t monotone, bounded, path_update, accounting, events, dichotomy, derivative, locality,
        find_delta_nonneg, conservation, run_increase, run_total;
  };

  static instrument_state make_inst(std::uint64_t n, std::span<const std::pair<node_id, node_id>> prelude, variant v) {
    if (prelude.empty()) return instrument_state(n, v);
    const auto parents = parents_from_pairs(n, prelude);
    const auto d = disjoint_set::from_parents(parents, v);
    return instrument_state::from_parents(parents, d.stored_sizes(), d.ranks(), v);
  }

  static dsu_type make_dsu(std::uint64_t n, std::span<const std::pair<node_id, node_id>> prelude, variant v) {
    if (n == 0) throw std::invalid_argument("a run needs at least one element");
    if (prelude.empty()) return dsu_type(n, v);
    return dsu_type::from_parents(parents_from_pairs(n, prelude), v);
  }

  std::size_t add(std::string name) {
    report_.criteria.push_back({std::move(name), 0, 0, {}});
    return report_.criteria.size() - 1;
  }

  void register_criteria() {
    c_lemma1_ = add("lemma1");
    c_lemma2_ = add("lemma2");
    c_lemma3_ = add("lemma3");
    c_lemma4_ = add("lemma4");
    c_path_growth_ = add("path_growth");
    c_partition_ = add("oracle_partition");
    c_root_size_ = add("oracle_root_size");
    c_current_size_ = add("current_size");
    c_size_max_dominates_ = add("size_max_dominates");
    c_oracle_incremental_ = add("oracle_incremental");
    c_forest_ = add("forest");
    c_rank_mirror_ = add("rank_mirror");
    c_ever_size_ = add("size_max_ever");
    bool has_ack = false;
    for (const auto& kind : opts_.kinds) {
      const std::string p = kind.name() + ".";
      kc_.push_back({add(p + "monotone"), add(p + "bounded"), add(p + "path_update"), add(p + "accounting"),
                     add(p + "events"), add(p + "dichotomy"), add(p + "derivative"), add(p + "locality"),
                     add(p + "find_delta_nonneg"), add(p + "conservation"), add(p + "run_increase"),
                     add(p + "run_total")});
      has_ack = has_ack || kind.family == potential_family::ackermann;
    }
    if (has_ack) {
      c_ack_defined_ = add("ACK.well_defined");
      c_ack_k_ = add("ACK.k_bound");
      c_ack_l_ = add("ACK.l_bound");
      c_ack_group_ = add("ACK.group_drop");
      c_ack_groups_ = add("ACK.failing_groups");
    }
  }

  void record_failure(std::size_t idx, std::uint64_t step, const std::string& detail) {
    auto& t = report_.criteria[idx];
    ++t.failures;
    if (t.first_failure.empty()) t.first_failure = detail;
    ++report_.violation_count;
    if (report_.violations.size() < opts_.max_violations) report_.violations.push_back({t.name, step, detail});
  }

  void note(std::size_t idx, const verdict& v, std::uint64_t step) {
    ++report_.criteria[idx].checks;
    if (!v.ok) record_failure(idx, step, v.counterexample);
  }

  template <class Detail>
  void note(std::size_t idx, bool ok, std::uint64_t step, Detail&& detail) {
    ++report_.criteria[idx].checks;
    if (!ok) record_failure(idx, step, detail());
  }

  void touch(node_id p) {
    const std::uint64_t stamp = report_.steps + 1;
    if (touched_stamp_[p] == stamp) return;
    touched_stamp_[p] = stamp;
    touched_.push_back(p);
    before_size_[p] = inst_.size(p);
    before_root_[p] = inst_.is_root(p) ? 1 : 0;
  }

  [[nodiscard]] bool touched_now(node_id p) const { return touched_stamp_[p] == report_.steps + 1; }

  void oracle_checks(std::uint64_t step) {
    const auto& sh = *shadow_;
    note(c_forest_, disjoint_set::is_forest(dsu_.parents()), step, [] { return "parent array has a cycle"; });
    note(c_oracle_incremental_, sh.matches_recompute(), step,
         [] { return "incremental descendant sets differ from recomputation"; });
    for (std::size_t i = 0; i < n_; ++i) {
      const auto p = static_cast<node_id>(i);
      note(c_partition_, dsu_.root_of(p) == sh.root_of(p), step, [&] {
        return "node " + std::to_string(p) + " root " + std::to_string(dsu_.root_of(p)) + " vs oracle " +
               std::to_string(sh.root_of(p));
      });
      if (dsu_.is_root(p))
        note(c_root_size_, dsu_.stored_size(p) == sh.size(p), step, [&] {
          return "root " + std::to_string(p) + " size " + std::to_string(dsu_.stored_size(p)) + " vs oracle " +
                 std::to_string(sh.size(p));
        });
      note(c_current_size_, inst_.size(p) == sh.size(p), step, [&] {
        return "node " + std::to_string(p) + " tracked size " + std::to_string(inst_.size(p)) + " vs oracle " +
               std::to_string(sh.size(p));
      });
      note(c_size_max_dominates_, inst_.size_max(p) >= sh.size(p), step,
           [&] { return "node " + std::to_string(p) + " size_max below current size"; });
      if (opts_.v.link == link_rule::by_rank && dsu_.is_root(p))
        note(c_rank_mirror_, inst_.rank(p) == dsu_.rank(p), step,
             [&] { return "rank of root " + std::to_string(p) + " differs from the mirror"; });
    }
  }

  /// Node-by-node potential check against the previous sweep. Under the
  /// oracle this runs every step and also confirms that only touched nodes
  /// and children of the union winner changed.
  void sweep(bool compare) {
    const std::uint64_t step = report_.steps;
    const bool local = compare && shadow_.has_value() && interval_ == 1;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto p = static_cast<node_id>(i);
      if (inst_.is_root(p)) {
        last_nonroot_[i] = 0;
        continue;
      }
      const node_view v = view_of(p, inst_);
      for (std::size_t k = 0; k < opts_.kinds.size(); ++k) {
        const auto& kind = opts_.kinds[k];
        const double now = phi_of(kind, v, ctx_);
        if (compare && last_nonroot_[i]) {
          const double was = last_phi_[k][i];
          const double tol = 1e-9 * std::max(1.0, std::abs(was));
          note(kc_[k].monotone, now <= was + tol, step, [&] {
            return "node " + std::to_string(p) + " potential rose " + std::to_string(was) + " -> " + std::to_string(now);
          });
          if (local && std::abs(now - was) > tol)
            note(kc_[k].locality, touched_now(p) || (winner_ && inst_.parent(p) == *winner_), step,
                 [&] { return "node " + std::to_string(p) + " changed potential off the find paths"; });
        }
        if (const auto cap = phi_upper_bound(kind, v, ctx_))
          note(kc_[k].bounded, now <= *cap + 1e-9, step, [&] {
            return "node " + std::to_string(p) + " potential " + std::to_string(now) + " above " + std::to_string(*cap);
          });
        last_phi_[k][i] = now;
      }
      last_nonroot_[i] = 1;
    }
  }

  harness_options opts_;
  std::uint64_t n_;
  instrument_state inst_;
  run_observer observer_;
  dsu_type dsu_;
  std::optional<shadow_forest> shadow_;
  potential_context ctx_;
  std::unique_ptr<level_table> levels_;
  std::unique_ptr<ack_table> acks_;
  analysis_scope scope_;
  std::uint64_t interval_ = 1;
  run_report report_;
  bool stopped_ = false;

  std::vector<kind_criteria> kc_;
  std::size_t c_lemma1_ = 0, c_lemma2_ = 0, c_lemma3_ = 0, c_lemma4_ = 0, c_path_growth_ = 0, c_partition_ = 0,
              c_root_size_ = 0, c_current_size_ = 0, c_size_max_dominates_ = 0, c_oracle_incremental_ = 0,
              c_forest_ = 0, c_rank_mirror_ = 0, c_ever_size_ = 0, c_ack_defined_ = 0, c_ack_k_ = 0, c_ack_l_ = 0,
              c_ack_group_ = 0, c_ack_groups_ = 0;

  find_snapshot snap_;
  std::vector<node_id> touched_;
  std::vector<std::uint64_t> touched_stamp_;
  std::vector<std::uint64_t> before_size_;
  std::vector<std::uint8_t> before_root_;
  std::vector<size_sample> before_all_;
  std::optional<node_id> winner_;
  std::optional<node_id> loser_;
  std::vector<std::uint8_t> last_nonroot_;
  std::vector<std::vector<double>> last_phi_;
};

inline void run_observer::on_step_begin(step_kind kind, std::uint64_t step) { self->step_begin(kind, step); }
inline void run_observer::on_find_path(std::span<const node_id> path, find_context ctx) { self->find_path(path, ctx); }
inline void run_observer::on_parent_change(const parent_change_event& ev) { self->parent_change(ev); }
inline void run_observer::on_find_done(std::span<const node_id> path, find_context ctx) { self->find_done(path, ctx); }
inline void run_observer::on_step_end(step_kind kind, std::uint64_t step) { self->step_end(kind, step); }

/// Replays a whole trace under the harness.
inline run_report run_trace(const trace& t, const harness_options& opts = {}) {
  checked_run run(t.n, t.prelude, opts);
  for (const auto& op : t.ops) {
    if (run.stopped()) break;
    run.apply(op);
  }
  run_report r = run.finish();
  r.generator = t.generator;
  r.seed = t.seed;
  return r;
}

}  // namespace ufpot
