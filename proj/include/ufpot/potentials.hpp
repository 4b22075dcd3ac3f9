#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufpot/ackermann.hpp"
#include "ufpot/disjoint_set.hpp"
#include "ufpot/instrument.hpp"
#include "ufpot/random.hpp"

namespace ufpot {

enum class potential_family : std::uint8_t { sqrt_size, log_squared, level, ackermann };

/// Which per-node potential to evaluate. `level` is only meaningful for the
/// level family (1, 2, 3, ...).
struct potential_kind {
  potential_family family = potential_family::sqrt_size;
  int level = 0;

  static constexpr potential_kind sqrt_size() { return {potential_family::sqrt_size, 0}; }
  static constexpr potential_kind log_squared() { return {potential_family::log_squared, 0}; }
  static constexpr potential_kind level_of(int j) { return {potential_family::level, j}; }
  static constexpr potential_kind ackermann() { return {potential_family::ackermann, 0}; }

  [[nodiscard]] std::string name() const {
    switch (family) {
      case potential_family::sqrt_size: return "SQRT";
      case potential_family::log_squared: return "LOGSQ";
      case potential_family::level: return "LEVEL" + std::to_string(level);
      case potential_family::ackermann: return "ACK";
    }
    return "?";
  }

  static potential_kind parse(const std::string& s) {
    if (s == "SQRT") return sqrt_size();
    if (s == "LOGSQ") return log_squared();
    if (s == "ACK") return ackermann();
    if (s.rfind("LEVEL", 0) == 0 && s.size() > 5) {
      const int j = std::stoi(s.substr(5));
      if (j >= 1) return level_of(j);
    }
    throw std::invalid_argument("unknown potential kind '" + s + "'");
  }

  friend bool operator==(const potential_kind&, const potential_kind&) = default;
};

inline std::vector<potential_kind> default_kinds() {
  return {potential_kind::sqrt_size(), potential_kind::log_squared(), potential_kind::level_of(1),
          potential_kind::level_of(2), potential_kind::ackermann()};
}

// ---------------------------------------------------------------------------
// Node-level formulas

inline double phi_sqrt(std::uint64_t size) { return std::sqrt(static_cast<double>(size)); }

inline double phi_logsq(std::uint64_t size) {
  const double s = static_cast<double>(size);
  const double d = 3.0 + std::log2(s);
  return s / (d * d);
}

/// sum_{k=0}^{alpha} sum_{l=1}^{r} [ A_k^{(l+1)}(r) > parent_r ]
inline std::uint64_t phi_ack(std::uint32_t r, std::uint32_t parent_r, unsigned alpha_n) {
  std::uint64_t total = 0;
  for (unsigned k = 0; k <= alpha_n; ++k) {
    sat_int y = ackermann(k, sat_int::of(r));  // A_k^{(1)}(r)
    for (std::uint32_t l = 1; l <= r; ++l) {
      y = ackermann(k, y);  // A_k^{(l+1)}(r)
      if (y > parent_r) {
        // iterates only grow, so every later l counts as well
        total += r - l + 1;
        break;
      }
    }
  }
  return total;
}

/// Precomputed level factors sum_{i<levels} 1/(1 + loghat(i, s)) for
/// s in [1, limit], with loghat(0, .) = log2.
class level_table {
 public:
  level_table(int max_level, std::uint64_t limit) : max_level_(max_level), limit_(limit) {
    values_.resize(static_cast<std::size_t>(max_level) * (limit + 1), 0.0);
    for (std::uint64_t s = 1; s <= limit; ++s) {
      double f = 0.0;
      for (int i = 0; i < max_level; ++i) {
        f += level_term(i, static_cast<double>(s));
        values_[static_cast<std::size_t>(i) * (limit + 1) + s] = f;
      }
    }
  }

  [[nodiscard]] double factor(int levels, std::uint64_t s) const {
    if (levels <= max_level_ && s <= limit_ && s >= 1)
      return values_[static_cast<std::size_t>(levels - 1) * (limit_ + 1) + s];
    return level_factor(levels, static_cast<double>(s));
  }

 private:
  int max_level_;
  std::uint64_t limit_;
  std::vector<double> values_;
};

/// phi_ack for r, parent_r < 64 at a fixed alpha.
class ack_table {
 public:
  explicit ack_table(unsigned alpha_n) : alpha_(alpha_n) {
    for (std::uint32_t r = 0; r < 64; ++r)
      for (std::uint32_t q = 0; q < 64; ++q) values_[r * 64 + q] = static_cast<std::uint16_t>(phi_ack(r, q, alpha_n));
  }

  [[nodiscard]] std::uint64_t operator()(std::uint32_t r, std::uint32_t parent_r) const {
    if (r < 64 && parent_r < 64) return values_[r * 64 + parent_r];
    return phi_ack(r, parent_r, alpha_);
  }

  [[nodiscard]] unsigned alpha_value() const noexcept { return alpha_; }

 private:
  unsigned alpha_;
  std::array<std::uint16_t, 64 * 64> values_{};
};

/// Run-wide inputs to potential evaluation.
struct potential_context {
  std::uint64_t n = 1;
  unsigned alpha_n = 0;
  const level_table* levels = nullptr;
  const ack_table* acks = nullptr;

  static potential_context for_elements(std::uint64_t n) { return {n, alpha(n), nullptr, nullptr}; }

  [[nodiscard]] double level_factor_of(int j, std::uint64_t parent_size_max) const {
    return levels ? levels->factor(j, parent_size_max) : level_factor(j, static_cast<double>(parent_size_max));
  }

  [[nodiscard]] std::uint64_t ack_of(std::uint32_t r, std::uint32_t parent_r) const {
    return acks ? (*acks)(r, parent_r) : phi_ack(r, parent_r, alpha_n);
  }
};

/// What a non-root node's potential depends on.
struct node_view {
  std::uint64_t size;             // current size
  std::uint64_t size_max;
  std::uint64_t parent_size_max;
  std::uint32_t r;
  std::uint32_t parent_r;
};

inline double phi_of(const potential_kind& kind, const node_view& v, const potential_context& ctx) {
  switch (kind.family) {
    case potential_family::sqrt_size: return phi_sqrt(v.size);
    case potential_family::log_squared: return phi_logsq(v.size);
    case potential_family::level:
      return std::sqrt(static_cast<double>(v.size_max)) * ctx.level_factor_of(kind.level, v.parent_size_max);
    case potential_family::ackermann: return static_cast<double>(ctx.ack_of(v.r, v.parent_r));
  }
  return 0.0;
}

inline node_view view_of(node_id p, const instrument_state& st) {
  const node_id q = st.parent(p);
  return {st.size(p), st.size_max(p), st.size_max(q), st.r(p), st.r(q)};
}

/// Potential of a non-root node. Roots carry no potential.
inline double phi(const potential_kind& kind, node_id p, const instrument_state& st, const potential_context& ctx) {
  if (st.is_root(p)) throw std::invalid_argument("potential is defined for non-root nodes only");
  return phi_of(kind, view_of(p, st), ctx);
}

/// Sum of phi over all current non-roots.
inline double overall_potential(const potential_kind& kind, const instrument_state& st,
                                 const potential_context& ctx) {
  double total = 0.0;
  for (std::size_t i = 0; i < st.element_count(); ++i) {
    const auto p = static_cast<node_id>(i);
    if (!st.is_root(p)) total += phi_of(kind, view_of(p, st), ctx);
  }
  return total;
}

/// Upper bound implied by boundedness: j * sqrt(size_max) for LEVEL(j),
/// (alpha + 1) * r for ACK, none for the size-only kinds.
inline std::optional<double> phi_upper_bound(const potential_kind& kind, const node_view& v,
                                             const potential_context& ctx) {
  if (kind.family == potential_family::level)
    return static_cast<double>(kind.level) * std::sqrt(static_cast<double>(v.size_max));
  if (kind.family == potential_family::ackermann) return static_cast<double>(ctx.alpha_n + 1) * v.r;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Explicit constants

/// slope:      find cost may use slope * (potential decrease)
/// additive:   constant added to the kind's bound function of n
/// events:     constant added to the bound function for uncovered edges
/// run_bound:  total union-time increase divided by n (ACK: a multiplier on
///             (alpha(n)+1)(log2 n + 1))
struct kind_constants {
  double slope;
  double additive;
  double events;
  double run_bound;
};

struct accounting_constants {
  // An edge whose child loses >= 1/2 of sqrt-size is paid at rate 2. The
  // rest satisfy s_{i-1}^2 < s_i, which chains at most log log n + 1 times;
  // one more for the edge into the root. Union charge: each node carries at
  // most sum_i 2^{-i/2} < 3.42 from its ever-ancestors.
  kind_constants sqrt_size{2.0, 3.0, 2.0, 3.5};
  // Derivative bound 1/(30(3+log x)^2) makes every edge with drop < 1/270
  // satisfy s_{i-1} < (1 + log s_i / 3)^2; two such steps cost a log, and
  // fewer than four fit below 8. Union charge is the charging sum itself.
  kind_constants log_squared{270.0, 8.0, 7.0, std::numbers::pi * std::numbers::pi / 6.0};
  // Drop of a moved node is >= sqrt(s_i) / (2 (1 + log s_{i+1})^2); below
  // 2^-13 it forces s_i <= ((1 + log s_{i+1}) / 8)^4, which chains at most
  // loghat*(n) times. The last edge is never paid.
  kind_constants level1{8192.0, 2.0, 1.0, 3.5};
  // Same for the second term, one node lower on the path; the first edge
  // and the last edge stay unpaid.
  kind_constants level2{8192.0, 4.0, 1.0, 7.0};
  // All but the node nearest the root in each k-group drop by >= 1. Nodes
  // with r = 0 have no potential, which costs one more edge.
  kind_constants ack{1.0, 2.0, 1.0, 1.0};

  [[nodiscard]] const kind_constants* for_kind(const potential_kind& k) const {
    switch (k.family) {
      case potential_family::sqrt_size: return &sqrt_size;
      case potential_family::log_squared: return &log_squared;
      case potential_family::level: return k.level == 1 ? &level1 : (k.level == 2 ? &level2 : nullptr);
      case potential_family::ackermann: return &ack;
    }
    return nullptr;
  }

  kind_constants* for_kind(const potential_kind& k) {
    return const_cast<kind_constants*>(static_cast<const accounting_constants&>(*this).for_kind(k));
  }

  /// Overrides one entry, e.g. "sqrt.run_bound" = 0.1.
  void set(const std::string& key, double value) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw std::invalid_argument("constant key needs <kind>.<field>: " + key);
    const std::string kind = key.substr(0, dot);
    const std::string field = key.substr(dot + 1);
    kind_constants* c = nullptr;
    if (kind == "sqrt") c = &sqrt_size;
    else if (kind == "logsq") c = &log_squared;
    else if (kind == "level1") c = &level1;
    else if (kind == "level2") c = &level2;
    else if (kind == "ack") c = &ack;
    else throw std::invalid_argument("unknown constant kind '" + kind + "'");
    if (field == "slope") c->slope = value;
    else if (field == "additive") c->additive = value;
    else if (field == "events") c->events = value;
    else if (field == "run_bound") c->run_bound = value;
    else throw std::invalid_argument("unknown constant field '" + field + "'");
  }
};

/// The n-dependent part of each additive term.
inline double bound_function(const potential_kind& kind, std::uint64_t n) {
  const double x = static_cast<double>(n);
  switch (kind.family) {
    case potential_family::sqrt_size: return std::log2(std::log2(std::max(x, 4.0)));
    case potential_family::log_squared: return 2.0 * log_star(x);
    case potential_family::level: return static_cast<double>(loghat(kind.level, x));
    case potential_family::ackermann: return static_cast<double>(alpha(n));
  }
  return 0.0;
}

/// Bound on the total potential added by all unions.
inline double run_increase_bound(const potential_kind& kind, const kind_constants& c, std::uint64_t n) {
  const double x = static_cast<double>(n);
  if (kind.family == potential_family::ackermann)
    return c.run_bound * (alpha(n) + 1.0) * (std::log2(x) + 1.0) * x;
  return c.run_bound * x;
}

// ---------------------------------------------------------------------------
// Per-find accounting

/// A find path captured before any pointer on it changed. nodes.front() is
/// the queried node and nodes.back() the root.
struct path_sample {
  node_id node;
  std::uint64_t size;
  std::uint64_t size_max;
  std::uint32_t r;
};

struct find_snapshot {
  std::uint64_t step = 0;
  std::uint8_t sub = 0;
  bool compressed = true;
  std::vector<path_sample> nodes;

  [[nodiscard]] std::size_t path_edges() const { return nodes.empty() ? 0 : nodes.size() - 1; }

  /// Current size of path node i once the find has rewritten the path.
  [[nodiscard]] std::uint64_t size_after(std::size_t i) const {
    if (!compressed || i == 0 || i + 1 == nodes.size()) return nodes[i].size;
    return nodes[i].size - nodes[i - 1].size;
  }
};

/// Which analyses are sound for the forest the find ran on.
struct analysis_scope {
  bool size_balanced = true;  // parent max size >= 2 * child max size
  bool rank_ordered = true;   // r strictly increases along parent edges
};

/// k_i and l_i for one non-root path node.
struct ack_entry {
  node_id node;
  std::uint32_t r;
  std::uint32_t parent_r;
  unsigned k;
  std::uint64_t l;
  double drop;
};

struct ack_diagnostics {
  std::vector<ack_entry> entries;
  verdict well_defined;    // A_0(r_i) = r_i + 1 <= r_{i+1}
  verdict k_bound;         // k_i <= alpha(n)
  verdict l_bound;         // l_i <= r_i
  verdict l_bound_r_pos;   // l_i <= r_i for r_i >= 1
  verdict group_drop;      // every member but the nearest-root one drops >= 1 (r_i >= 1)
  std::size_t failing_groups = 0;  // k-groups with a member whose potential did not drop by 1
  std::size_t failing_nodes = 0;   // non-root nodes whose potential did not drop by 1
};

/// Largest k with A_k(r) <= parent_r, then largest l >= 1 with
/// A_k^{(l)}(r) <= parent_r. Requires r + 1 <= parent_r.
inline std::pair<unsigned, std::uint64_t> ack_k_l(std::uint32_t r, std::uint32_t parent_r) {
  unsigned k = 0;
  while (ackermann(k + 1, sat_int::of(r)) <= parent_r) ++k;
  std::uint64_t l = 1;
  sat_int y = ackermann(k, sat_int::of(r));
  for (;;) {
    y = ackermann(k, y);
    if (y > parent_r) break;
    ++l;
  }
  return {k, l};
}

/// Diagnostics for a find, given per-node ACK drops (index-aligned with the
/// non-root path nodes).
inline ack_diagnostics diagnose_ack(const find_snapshot& snap, std::span<const double> drops,
                                    const potential_context& ctx) {
  ack_diagnostics d;
  if (snap.nodes.size() < 2) return d;
  const std::size_t m = snap.nodes.size() - 1;  // non-root nodes
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = snap.nodes[i];
    const auto& b = snap.nodes[i + 1];
    if (a.r + 1 > b.r) {
      d.well_defined.fail("node " + std::to_string(a.node) + ": r=" + std::to_string(a.r) +
                          " parent r=" + std::to_string(b.r));
      d.entries.push_back({a.node, a.r, b.r, 0, 0, drops[i]});
      continue;
    }
    const auto [k, l] = ack_k_l(a.r, b.r);
    if (k > ctx.alpha_n)
      d.k_bound.fail("node " + std::to_string(a.node) + ": k=" + std::to_string(k) + " > alpha=" +
                     std::to_string(ctx.alpha_n));
    if (l > a.r) {
      const std::string msg = "node " + std::to_string(a.node) + ": l=" + std::to_string(l) + " > r=" +
                              std::to_string(a.r);
      d.l_bound.fail(msg);
      if (a.r >= 1) d.l_bound_r_pos.fail(msg);
    }
    d.entries.push_back({a.node, a.r, b.r, k, l, drops[i]});
  }
  if (!d.well_defined.ok) return d;
  // Group by k; the member nearest the root is exempt.
  std::vector<bool> group_failed(ctx.alpha_n + 2, false);
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    const auto& e = d.entries[i];
    if (e.drop >= 1.0) continue;
    ++d.failing_nodes;
    if (e.k < group_failed.size()) group_failed[e.k] = true;
    bool nearest = true;
    for (std::size_t j = i + 1; j < d.entries.size(); ++j)
      if (d.entries[j].k == e.k) nearest = false;
    if (!nearest && e.r >= 1)
      d.group_drop.fail("node " + std::to_string(e.node) + " in group k=" + std::to_string(e.k) +
                        " dropped only " + std::to_string(e.drop));
  }
  for (bool f : group_failed) d.failing_groups += f ? 1 : 0;
  return d;
}

/// Accounting outcome for one find and one potential kind.
struct kind_find_result {
  potential_kind kind;
  double delta_phi = 0.0;
  std::size_t events = 0;       // uncovered edges counted against the event bound
  bool applicable = false;      // accounting inequality asserted for this find
  double amortized = 0.0;       // path_edges - slope * delta_phi
  double additive = 0.0;
  std::vector<double> before;   // potential of each non-root path node
  std::vector<double> after;
  verdict accounting;           // path_edges <= slope * delta_phi + additive
  verdict event_bound;          // events <= bound function + events constant
  verdict dichotomy;            // every uncovered edge satisfies the kind's size condition
  verdict monotone;             // no node's potential rose
  verdict bounded;              // node potentials within their boundedness limit
  verdict derivative;           // LOGSQ: drop >= d / (30 (3 + log2 s)^2)
  std::optional<ack_diagnostics> ack;

  [[nodiscard]] bool ok() const {
    bool good = monotone.ok && bounded.ok;
    if (applicable) good = good && accounting.ok && event_bound.ok && dichotomy.ok && derivative.ok;
    if (applicable && ack) good = good && ack->well_defined.ok && ack->k_bound.ok && ack->group_drop.ok;
    return good;
  }
};

namespace detail {

inline bool level_edge_condition(std::uint64_t child, double parent_measure) {
  const double t = (1.0 + parent_measure) / 8.0;
  return static_cast<double>(child) <= t * t * t * t;
}

}  // namespace detail

/// Potential changes on a find path and the kind's accounting inequality.
/// Only path nodes can change potential during a find; every other node
/// keeps its parent and its parent's max size.
inline kind_find_result account_find(const potential_kind& kind, const find_snapshot& snap,
                                     const potential_context& ctx, const accounting_constants& constants,
                                     const analysis_scope& scope = {}) {
  kind_find_result out;
  out.kind = kind;
  const auto& nodes = snap.nodes;
  if (nodes.empty()) return out;
  const std::size_t edges = nodes.size() - 1;
  const std::size_t root = edges;
  const auto step_tag = [&](std::size_t i) {
    return "step " + std::to_string(snap.step) + "." + std::to_string(snap.sub) + " node " +
           std::to_string(nodes[i].node);
  };

  out.before.resize(edges);
  out.after.resize(edges);
  std::vector<double> term0_drop;  // LEVEL(2): first term drop per node
  std::vector<double> term1_drop;  // LEVEL(2): second term drop per node
  if (kind.family == potential_family::level && kind.level == 2) {
    term0_drop.assign(edges, 0.0);
    term1_drop.assign(edges, 0.0);
  }

  for (std::size_t i = 0; i < edges; ++i) {
    const bool moves = snap.compressed && i + 2 <= edges;  // parent becomes the root
    const std::uint64_t parent_max_after = moves ? nodes[root].size_max : nodes[i + 1].size_max;
    const std::uint32_t parent_r_after = moves ? nodes[root].r : nodes[i + 1].r;
    const node_view vb{nodes[i].size, nodes[i].size_max, nodes[i + 1].size_max, nodes[i].r, nodes[i + 1].r};
    const node_view va{snap.size_after(i), nodes[i].size_max, parent_max_after, nodes[i].r, parent_r_after};
    out.before[i] = phi_of(kind, vb, ctx);
    out.after[i] = phi_of(kind, va, ctx);
    const double drop = out.before[i] - out.after[i];
    if (drop < 0.0) out.monotone.fail(step_tag(i) + " potential rose by " + std::to_string(-drop));
    out.delta_phi += drop;
    if (const auto cap = phi_upper_bound(kind, vb, ctx); cap && out.before[i] > *cap + 1e-9)
      out.bounded.fail(step_tag(i) + " potential " + std::to_string(out.before[i]) + " above " +
                       std::to_string(*cap));
    if (!term0_drop.empty()) {
      const double root_sqrt = std::sqrt(static_cast<double>(nodes[i].size_max));
      term0_drop[i] = root_sqrt * (level_term(0, static_cast<double>(vb.parent_size_max)) -
                                   level_term(0, static_cast<double>(va.parent_size_max)));
      term1_drop[i] = root_sqrt * (level_term(1, static_cast<double>(vb.parent_size_max)) -
                                   level_term(1, static_cast<double>(va.parent_size_max)));
    }
  }

  const kind_constants* c = constants.for_kind(kind);
  const bool analysis_sound = kind.family == potential_family::sqrt_size ||
                              kind.family == potential_family::log_squared ||
                              (kind.family == potential_family::level && scope.size_balanced) ||
                              (kind.family == potential_family::ackermann && scope.rank_ordered);
  out.applicable = snap.compressed && c != nullptr && analysis_sound;
  const double f = c ? bound_function(kind, ctx.n) : 0.0;

  switch (kind.family) {
    case potential_family::sqrt_size:
      // drop of node i pays for edge (i-1 -> i)
      for (std::size_t i = 1; i + 1 <= edges && snap.compressed; ++i) {
        const double drop = out.before[i] - out.after[i];
        if (drop >= 0.5) continue;
        ++out.events;
        const std::uint64_t lo = nodes[i - 1].size;
        if (!(static_cast<uint128>(lo) * lo < nodes[i].size))
          out.dichotomy.fail(step_tag(i) + " drop " + std::to_string(drop) + " but s_prev^2 >= s");
      }
      break;
    case potential_family::log_squared:
      for (std::size_t i = 1; i + 1 <= edges && snap.compressed; ++i) {
        const double drop = out.before[i] - out.after[i];
        const double s = static_cast<double>(nodes[i].size);
        const double d = static_cast<double>(nodes[i - 1].size);
        const double denom = 3.0 + std::log2(s);
        if (drop < d / (30.0 * denom * denom))
          out.derivative.fail(step_tag(i) + " drop " + std::to_string(drop) + " below derivative bound");
        if (drop >= 1.0 / 270.0) continue;
        ++out.events;
        const double t = 1.0 + std::log2(s) / 3.0;
        if (!(d < t * t)) out.dichotomy.fail(step_tag(i) + " uncovered edge with s_prev >= (1+log s/3)^2");
      }
      break;
    case potential_family::level: {
      if (!snap.compressed || edges < 2) break;
      const double threshold = 1.0 / 8192.0;
      if (kind.level == 1) {
        for (std::size_t i = 0; i + 2 <= edges; ++i) {
          const double drop = out.before[i] - out.after[i];
          if (drop >= threshold) continue;
          ++out.events;
          if (!detail::level_edge_condition(nodes[i].size_max, std::log2(static_cast<double>(nodes[i + 1].size_max))))
            out.dichotomy.fail(step_tag(i) + " uncovered edge violates s_i <= ((1+log s_{i+1})/8)^4");
        }
      } else if (kind.level == 2) {
        for (std::size_t i = 0; i + 2 <= edges; ++i) {
          if (term0_drop[i] >= threshold) continue;
          if (!detail::level_edge_condition(nodes[i].size_max, std::log2(static_cast<double>(nodes[i + 1].size_max))))
            out.dichotomy.fail(step_tag(i) + " uncovered edge violates s_i <= ((1+log s_{i+1})/8)^4");
          if (i == 0) continue;  // no lower node to pay; counted in the additive term
          if (term1_drop[i - 1] >= threshold) continue;
          ++out.events;
          if (!detail::level_edge_condition(nodes[i - 1].size_max,
                                            static_cast<double>(loghat_star(static_cast<double>(nodes[i].size_max)))))
            out.dichotomy.fail(step_tag(i) + " uncovered edge violates s_{i-1} <= ((1+loghat* s_i)/8)^4");
        }
      }
      break;
    }
    case potential_family::ackermann: {
      std::vector<double> drops(edges);
      for (std::size_t i = 0; i < edges; ++i) drops[i] = out.before[i] - out.after[i];
      if (snap.compressed) {
        out.ack = diagnose_ack(snap, drops, ctx);
        out.events = out.ack->failing_nodes;
      }
      break;
    }
  }

  if (c) {
    out.additive = f + c->additive;
    out.amortized = static_cast<double>(edges) - c->slope * out.delta_phi;
    if (out.applicable) {
      if (static_cast<double>(edges) > c->slope * out.delta_phi + out.additive)
        out.accounting.fail("step " + std::to_string(snap.step) + "." + std::to_string(snap.sub) + ": " +
                            std::to_string(edges) + " edges > " + std::to_string(c->slope) + " * " +
                            std::to_string(out.delta_phi) + " + " + std::to_string(out.additive));
      double event_cap = f + c->events;
      if (kind.family == potential_family::ackermann) event_cap += 1.0;  // r = 0 start node
      if (static_cast<double>(out.events) > event_cap)
        out.event_bound.fail("step " + std::to_string(snap.step) + ": " + std::to_string(out.events) +
                             " uncovered edges > " + std::to_string(event_cap));
    }
  }
  return out;
}

}  // namespace ufpot
