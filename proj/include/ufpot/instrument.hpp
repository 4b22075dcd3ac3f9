#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufpot/disjoint_set.hpp"

namespace ufpot {

struct verdict {
  bool ok = true;
  std::string counterexample;

  void fail(std::string why) {
    if (ok) counterexample = std::move(why);
    ok = false;
  }
};

/// Online mirror of the forest that tracks what the analysis needs and the
/// data structure does not: exact current sizes, running max sizes, ranks.
///
/// size_max(p) equals the current size while p is a root and is frozen at
/// the moment p is linked below another root.
class instrument_state {
 public:
  instrument_state(std::size_t n, variant v)
      : variant_(v), parent_(n), cur_(n, 1), max_(n, 1), rank_(n, 0), seen_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<node_id>(i);
  }

  /// Starts from an existing shape: current and max sizes are the subtree
  /// sizes, ranks the subtree heights.
  static instrument_state from_parents(std::span<const node_id> parents, std::span<const std::uint64_t> subtree_sizes,
                                       std::span<const std::uint32_t> heights, variant v) {
    instrument_state s(parents.size(), v);
    for (std::size_t i = 0; i < parents.size(); ++i) {
      s.parent_[i] = parents[i];
      s.cur_[i] = s.max_[i] = subtree_sizes[i];
      s.rank_[i] = heights[i];
    }
    return s;
  }

  /// Marks the start of an external operation. Steps must not go backwards.
  void begin_step(std::uint64_t step) {
    if (step < last_step_) throw std::logic_error("step " + std::to_string(step) + " arrives after " +
                                                  std::to_string(last_step_));
    last_step_ = step;
  }

  void observe(const parent_change_event& ev) {
    if (ev.step != last_step_) {
      if (ev.step < last_step_) throw std::logic_error("out-of-order event at step " + std::to_string(ev.step));
      last_step_ = ev.step;
    }
    if (ev.node >= parent_.size() || ev.new_parent >= parent_.size())
      throw std::logic_error("event node out of range");
    if (parent_[ev.node] != ev.old_parent) throw std::logic_error("event does not match the mirrored parent");
    if (ev.cause == change_cause::union_link) {
      const node_id loser = ev.node;
      const node_id winner = ev.new_parent;
      if (parent_[loser] != loser || parent_[winner] != winner)
        throw std::logic_error("union link between non-roots");
      parent_[loser] = winner;
      cur_[winner] += cur_[loser];
      max_[winner] = std::max(max_[winner], cur_[winner]);
      rank_[winner] = std::max(rank_[winner], rank_[loser] + 1);
    } else {
      // Every node strictly between the old parent and the new one loses the
      // moved subtree. Rewrites arrive nearest-root first, so this walk is
      // usually one hop.
      for (node_id a = ev.old_parent; a != ev.new_parent; a = parent_[a]) {
        if (parent_[a] == a) throw std::logic_error("compression target is not an ancestor");
        cur_[a] -= cur_[ev.node];
      }
      parent_[ev.node] = ev.new_parent;
    }
  }

  [[nodiscard]] std::size_t element_count() const noexcept { return parent_.size(); }
  [[nodiscard]] variant get_variant() const noexcept { return variant_; }
  [[nodiscard]] node_id parent(node_id p) const { return parent_[p]; }
  [[nodiscard]] bool is_root(node_id p) const { return parent_[p] == p; }
  [[nodiscard]] std::uint64_t size(node_id p) const { return cur_[p]; }
  [[nodiscard]] std::uint64_t size_max(node_id p) const { return max_[p]; }
  [[nodiscard]] std::uint32_t rank(node_id p) const { return rank_[p]; }
  [[nodiscard]] std::uint64_t parent_size_max_seen(node_id p) const { return seen_[p]; }
  [[nodiscard]] std::uint64_t last_step() const noexcept { return last_step_; }
  [[nodiscard]] std::span<const node_id> parents() const noexcept { return parent_; }
  [[nodiscard]] std::span<const std::uint64_t> sizes() const noexcept { return cur_; }
  [[nodiscard]] std::span<const std::uint64_t> sizes_max() const noexcept { return max_; }

  /// floor(log2 size_max) under union-by-size, the rank under union-by-rank.
  [[nodiscard]] std::uint32_t r(node_id p) const {
    if (variant_.link == link_rule::by_rank) return rank_[p];
    return static_cast<std::uint32_t>(std::bit_width(max_[p]) - 1);
  }

  void set_parent_size_max_seen(node_id p, std::uint64_t v) { seen_[p] = v; }

 private:
  variant variant_;
  std::vector<node_id> parent_;
  std::vector<std::uint64_t> cur_;
  std::vector<std::uint64_t> max_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint64_t> seen_;
  std::uint64_t last_step_ = 0;
};

struct size_sample {
  node_id node;
  std::uint64_t size;
  bool is_root;
};

/// Roots kept as roots never shrink; non-roots never grow. `before` and
/// `after` describe the same nodes in the same order.
inline verdict check_lemma1(std::span<const size_sample> before, std::span<const size_sample> after,
                            std::uint64_t step) {
  verdict v;
  if (before.size() != after.size()) throw std::invalid_argument("size snapshots differ in length");
  for (std::size_t i = 0; i < before.size(); ++i) {
    const auto& b = before[i];
    const auto& a = after[i];
    if (b.node != a.node) throw std::invalid_argument("size snapshots are not aligned");
    if (b.is_root && a.is_root && a.size < b.size)
      v.fail("step " + std::to_string(step) + ": root " + std::to_string(a.node) + " shrank " +
             std::to_string(b.size) + " -> " + std::to_string(a.size));
    if (!a.is_root && a.size > b.size)
      v.fail("step " + std::to_string(step) + ": non-root " + std::to_string(a.node) + " grew " +
             std::to_string(b.size) + " -> " + std::to_string(a.size));
  }
  return v;
}

struct lemma23_verdict {
  verdict parent_monotone;  // max size of the parent never decreases
  verdict balance;          // parent max size at least twice the child's (rank order under union-by-rank)
};

/// Checks the listed nodes and refreshes their last-seen parent max size.
/// `check_balance` is off for analysis-only forests.
inline lemma23_verdict check_lemma2_3(instrument_state& st, std::span<const node_id> nodes, std::uint64_t step,
                                      bool check_balance = true) {
  lemma23_verdict out;
  for (node_id p : nodes) {
    if (st.is_root(p)) continue;
    const node_id q = st.parent(p);
    const std::uint64_t parent_max = st.size_max(q);
    if (parent_max < st.parent_size_max_seen(p))
      out.parent_monotone.fail("step " + std::to_string(step) + ": parent max size of " + std::to_string(p) +
                               " fell " + std::to_string(st.parent_size_max_seen(p)) + " -> " +
                               std::to_string(parent_max));
    if (check_balance) {
      if (st.get_variant().link == link_rule::by_size) {
        if (parent_max < 2 * st.size_max(p))
          out.balance.fail("step " + std::to_string(step) + ": size_max(" + std::to_string(q) +
                           ")=" + std::to_string(parent_max) + " < 2*size_max(" + std::to_string(p) +
                           ")=" + std::to_string(2 * st.size_max(p)));
      } else if (st.rank(q) < st.rank(p) + 1) {
        out.balance.fail("step " + std::to_string(step) + ": rank(" + std::to_string(q) + ")=" +
                         std::to_string(st.rank(q)) + " <= rank(" + std::to_string(p) + ")=" +
                         std::to_string(st.rank(p)));
      }
    }
    st.set_parent_size_max_seen(p, parent_max);
  }
  return out;
}

/// Same check over every node.
inline lemma23_verdict check_lemma2_3(instrument_state& st, std::uint64_t step, bool check_balance = true) {
  std::vector<node_id> all(st.element_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<node_id>(i);
  return check_lemma2_3(st, all, step, check_balance);
}

struct lemma4_result {
  double charged_sum = 0.0;
  double bound = 0.0;
  bool ok = true;
  std::vector<double> histogram;  // charge per floor(log2 size_max) bucket
};

/// Sum over all nodes of size_max / (1 + log2 size_max)^2 against (pi^2/6) n.
/// Each node is charged at most sum_{i>=0} 1/(1+i)^2 by its ever-ancestors,
/// whose max sizes at least double at every step up.
inline lemma4_result check_lemma4(const instrument_state& st) {
  lemma4_result r;
  const std::size_t n = st.element_count();
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = static_cast<double>(st.size_max(static_cast<node_id>(i)));
    const double l = 1.0 + std::log2(s);
    const double c = s / (l * l);
    r.charged_sum += c;
    const auto bucket = static_cast<std::size_t>(std::bit_width(st.size_max(static_cast<node_id>(i))) - 1);
    if (r.histogram.size() <= bucket) r.histogram.resize(bucket + 1, 0.0);
    r.histogram[bucket] += c;
  }
  r.bound = std::numbers::pi * std::numbers::pi / 6.0 * static_cast<double>(n);
  r.ok = r.charged_sum <= r.bound;
  return r;
}

}  // namespace ufpot
