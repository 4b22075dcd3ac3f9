#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ufpot/disjoint_set.hpp"

namespace ufpot {

/// Fixed-capacity bit set over node ids.
class node_set {
 public:
  node_set() = default;
  explicit node_set(std::size_t n) : bits_(n), words_((n + 63) / 64, 0) {}

  void insert(node_id x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  [[nodiscard]] bool contains(node_id x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }

  [[nodiscard]] std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  node_set& operator|=(const node_set& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  void erase_all(const node_set& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  }

  [[nodiscard]] std::vector<node_id> members() const {
    std::vector<node_id> out;
    for (std::size_t i = 0; i < bits_; ++i)
      if (contains(static_cast<node_id>(i))) out.push_back(static_cast<node_id>(i));
    return out;
  }

  friend bool operator==(const node_set&, const node_set&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Brute-force ground truth. Keeps the explicit descendant set of every node
/// (each node is its own descendant) and the set of nodes that were ever a
/// descendant. Every update is O(n) per ancestor touched.
class shadow_forest {
 public:
  explicit shadow_forest(std::size_t n) : parent_(n), desc_(n, node_set(n)), ever_(n, node_set(n)) {
    if (n == 0) throw std::invalid_argument("shadow forest needs at least one element");
    for (std::size_t i = 0; i < n; ++i) {
      parent_[i] = static_cast<node_id>(i);
      desc_[i].insert(static_cast<node_id>(i));
      ever_[i].insert(static_cast<node_id>(i));
    }
  }

  static shadow_forest from_parents(std::span<const node_id> parents) {
    if (!disjoint_set::is_forest(parents)) throw std::invalid_argument("parent array is not a forest");
    shadow_forest f(parents.size());
    f.parent_.assign(parents.begin(), parents.end());
    f.desc_ = f.recompute();
    f.ever_ = f.desc_;
    return f;
  }

  /// Applies one pointer rewrite. The moved subtree leaves every strict
  /// ancestor on the old chain and joins every node on the new chain; shared
  /// ancestors see no net change.
  void apply(const parent_change_event& ev) {
    const std::size_t n = parent_.size();
    if (ev.node >= n || ev.old_parent >= n || ev.new_parent >= n)
      throw std::logic_error("event references a node out of range");
    if (parent_[ev.node] != ev.old_parent)
      throw std::logic_error("event old_parent " + std::to_string(ev.old_parent) + " does not match parent " +
                             std::to_string(parent_[ev.node]) + " of node " + std::to_string(ev.node));
    if (desc_[ev.node].contains(ev.new_parent) && ev.new_parent != ev.node)
      throw std::logic_error("event would create a cycle at node " + std::to_string(ev.node));
    if (ev.new_parent == ev.node) throw std::logic_error("event turns a node into a root");

    const node_set moved = desc_[ev.node];
    if (ev.old_parent != ev.node) {
      for (node_id a = ev.old_parent;; a = parent_[a]) {
        desc_[a].erase_all(moved);
        if (parent_[a] == a) break;
      }
    }
    parent_[ev.node] = ev.new_parent;
    for (node_id a = ev.new_parent;; a = parent_[a]) {
      desc_[a] |= moved;
      ever_[a] |= moved;
      if (parent_[a] == a) break;
    }
  }

  [[nodiscard]] std::size_t element_count() const noexcept { return parent_.size(); }
  [[nodiscard]] std::size_t size(node_id p) const { return desc_.at(p).count(); }
  [[nodiscard]] std::size_t ever_size(node_id p) const { return ever_.at(p).count(); }
  [[nodiscard]] const node_set& descendants(node_id p) const { return desc_.at(p); }
  [[nodiscard]] node_id parent(node_id p) const { return parent_.at(p); }
  [[nodiscard]] bool is_root(node_id p) const { return parent_.at(p) == p; }
  [[nodiscard]] std::span<const node_id> parents() const noexcept { return parent_; }

  [[nodiscard]] node_id root_of(node_id p) const {
    while (parent_[p] != p) p = parent_[p];
    return p;
  }

  /// Descendant sets rebuilt from the parent array alone.
  [[nodiscard]] std::vector<node_set> recompute() const {
    const std::size_t n = parent_.size();
    std::vector<node_set> d(n, node_set(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = static_cast<node_id>(i);
      for (node_id a = x;; a = parent_[a]) {
        d[a].insert(x);
        if (parent_[a] == a) break;
      }
    }
    return d;
  }

  [[nodiscard]] bool matches_recompute() const { return recompute() == desc_; }

 private:
  std::vector<node_id> parent_;
  std::vector<node_set> desc_;
  std::vector<node_set> ever_;
};

/// A forest shape built outside union-by-size, mirrored in both the oracle
/// and a compressing disjoint set.
template <class Observer = null_observer>
struct injected_forest {
  shadow_forest shadow;
  basic_disjoint_set<Observer> dsu;
};

/// Builds n nodes where each listed (node, parent) pair sets a parent pointer
/// and every unlisted node is a root.
inline std::vector<node_id> parents_from_pairs(std::size_t n, std::span<const std::pair<node_id, node_id>> pairs) {
  std::vector<node_id> parent(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<node_id>(i);
  for (const auto& [node, par] : pairs) {
    if (node >= n || par >= n) throw std::invalid_argument("injected node id out of range");
    if (seen[node]) throw std::invalid_argument("node " + std::to_string(node) + " listed twice");
    seen[node] = true;
    parent[node] = par;
  }
  if (!disjoint_set::is_forest(parent)) throw std::invalid_argument("injected forest contains a cycle");
  return parent;
}

template <class Observer = null_observer>
injected_forest<Observer> inject_forest(std::size_t n, std::span<const std::pair<node_id, node_id>> pairs) {
  const auto parent = parents_from_pairs(n, pairs);
  return {shadow_forest::from_parents(parent),
          basic_disjoint_set<Observer>::from_parents(parent, variant{link_rule::by_size, compression::on})};
}

}  // namespace ufpot
