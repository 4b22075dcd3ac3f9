#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace ufpot {

using node_id = std::uint32_t;

enum class link_rule : std::uint8_t { by_size, by_rank };
enum class compression : std::uint8_t { on, off };

struct variant {
  link_rule link = link_rule::by_size;
  compression compress = compression::on;

  friend bool operator==(const variant&, const variant&) = default;
};

inline std::string to_string(const variant& v) {
  std::string s = v.link == link_rule::by_size ? "size" : "rank";
  if (v.compress == compression::off) s += "-nocompress";
  return s;
}

// Accepts "size", "rank", "size-nocompress", "rank-nocompress".
inline variant parse_variant(const std::string& text) {
  if (text == "size") return {link_rule::by_size, compression::on};
  if (text == "rank") return {link_rule::by_rank, compression::on};
  if (text == "size-nocompress") return {link_rule::by_size, compression::off};
  if (text == "rank-nocompress") return {link_rule::by_rank, compression::off};
  throw std::invalid_argument("unknown variant '" + text + "'");
}

inline constexpr variant all_variants[] = {
    {link_rule::by_size, compression::on},
    {link_rule::by_size, compression::off},
    {link_rule::by_rank, compression::on},
    {link_rule::by_rank, compression::off},
};

enum class change_cause : std::uint8_t { union_link, compression };
enum class step_kind : std::uint8_t { find, unite };

/// One parent-pointer rewrite. `step` is the op clock of the enclosing
/// external call.
struct parent_change_event {
  node_id node;
  node_id old_parent;
  node_id new_parent;
  change_cause cause;
  std::uint64_t step;
};

/// `sub` is 0 for an external find and 1 or 2 for the two finds issued by a
/// union.
struct find_context {
  std::uint64_t step;
  std::uint8_t sub;
};

template <class O>
concept dsu_observer = requires(O& o, std::span<const node_id> path, find_context ctx,
                                const parent_change_event& ev, step_kind kind, std::uint64_t step) {
  o.on_step_begin(kind, step);
  o.on_find_path(path, ctx);
  o.on_parent_change(ev);
  o.on_find_done(path, ctx);
  o.on_step_end(kind, step);
};

/// Observer that compiles every hook away.
struct null_observer {
  void on_step_begin(step_kind, std::uint64_t) noexcept {}
  void on_find_path(std::span<const node_id>, find_context) noexcept {}
  void on_parent_change(const parent_change_event&) noexcept {}
  void on_find_done(std::span<const node_id>, find_context) noexcept {}
  void on_step_end(step_kind, std::uint64_t) noexcept {}
};

struct find_result {
  node_id root;
  std::span<const node_id> path;  // valid until the next operation
};

struct union_result {
  node_id new_root;
  bool merged;
};

/// Union-find over the elements [0, n) with union-by-size or union-by-rank
/// and optional path compression.
///
/// Ties are broken in favour of the first argument's root. Find locates the
/// root and then rewrites the path starting from the node nearest the root,
/// which leaves the same pointers as the recursive formulation and emits
/// compression events in the order the recursion would unwind.
///
/// Sizes are kept for every variant. A non-root keeps the size it had when it
/// was linked; compression never touches stored sizes.
template <class Observer = null_observer>
  requires dsu_observer<Observer>
class basic_disjoint_set {
  static constexpr bool observed = !std::is_same_v<Observer, null_observer>;

 public:
  explicit basic_disjoint_set(std::size_t n, variant v = {}) : variant_(v) {
    if (n == 0) throw std::invalid_argument("disjoint set needs at least one element");
    if (n > std::size_t{UINT32_MAX}) throw std::invalid_argument("too many elements");
    parent_.resize(n);
    size_.assign(n, 1);
    rank_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<node_id>(i);
  }

  /// Builds a forest of the given shape. Stored sizes become subtree sizes and
  /// ranks become subtree heights.
  static basic_disjoint_set from_parents(std::span<const node_id> parents, variant v = {}) {
    basic_disjoint_set d(parents.size(), v);
    const std::size_t n = parents.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (parents[i] >= n) throw std::invalid_argument("parent id out of range");
      d.parent_[i] = parents[i];
    }
    if (!is_forest(d.parent_)) throw std::invalid_argument("parent array contains a cycle");
    // Accumulate sizes and heights bottom-up by processing nodes in
    // decreasing depth order.
    std::vector<std::uint32_t> depth(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t dpt = 0;
      for (node_id x = static_cast<node_id>(i); d.parent_[x] != x; x = d.parent_[x]) ++dpt;
      depth[i] = dpt;
    }
    std::vector<node_id> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<node_id>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](node_id a, node_id b) { return depth[a] > depth[b]; });
    for (node_id x : order) {
      const node_id p = d.parent_[x];
      if (p == x) continue;
      d.size_[p] += d.size_[x];
      if (d.rank_[p] < d.rank_[x] + 1) d.rank_[p] = d.rank_[x] + 1;
    }
    return d;
  }

  // The observer pointer makes copies share a listener; forbid it.
  basic_disjoint_set(const basic_disjoint_set&) = delete;
  basic_disjoint_set& operator=(const basic_disjoint_set&) = delete;
  basic_disjoint_set(basic_disjoint_set&&) noexcept = default;
  basic_disjoint_set& operator=(basic_disjoint_set&&) noexcept = default;

  void subscribe(Observer& observer)
    requires observed
  {
    if (observer_ != nullptr) throw std::logic_error("an observer is already subscribed");
    observer_ = &observer;
  }

  /// Returns the root of `p`, compressing if enabled. Records no path when
  /// no observer type is configured.
  node_id find(node_id p) {
    check(p);
    if constexpr (observed) {
      return find_with_path(p).root;
    } else {
      ++op_clock_;
      return find_fast(p);
    }
  }

  /// Returns the root and the visited nodes from `p` up to and including the
  /// root.
  find_result find_with_path(node_id p) {
    check(p);
    const std::uint64_t step = ++op_clock_;
    notify_begin(step_kind::find, step);
    const node_id root = find_internal(p, find_context{step, 0});
    notify_end(step_kind::find, step);
    return {root, path_};
  }

  union_result unite(node_id a, node_id b) {
    check(a);
    check(b);
    const std::uint64_t step = ++op_clock_;
    notify_begin(step_kind::unite, step);
    node_id ra = 0;
    node_id rb = 0;
    if constexpr (observed) {
      ra = find_internal(a, find_context{step, 1});
      rb = find_internal(b, find_context{step, 2});
    } else {
      ra = find_fast(a);
      rb = find_fast(b);
    }
    if (ra == rb) {
      notify_end(step_kind::unite, step);
      return {ra, false};
    }
    if (variant_.link == link_rule::by_size) {
      if (size_[ra] < size_[rb]) std::swap(ra, rb);
    } else {
      if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
      else if (rank_[ra] == rank_[rb]) ++rank_[ra];
    }
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    if constexpr (observed) {
      if (observer_) observer_->on_parent_change({rb, rb, ra, change_cause::union_link, step});
    }
    notify_end(step_kind::unite, step);
    return {ra, true};
  }

  /// Root lookup that never mutates the forest.
  [[nodiscard]] node_id root_of(node_id p) const {
    check(p);
    while (parent_[p] != p) p = parent_[p];
    return p;
  }

  [[nodiscard]] std::size_t element_count() const noexcept { return parent_.size(); }
  [[nodiscard]] node_id parent(node_id p) const { return parent_.at(p); }
  [[nodiscard]] std::uint64_t stored_size(node_id p) const { return size_.at(p); }
  [[nodiscard]] std::uint32_t rank(node_id p) const { return rank_.at(p); }
  [[nodiscard]] bool is_root(node_id p) const { return parent_.at(p) == p; }
  [[nodiscard]] std::span<const node_id> parents() const noexcept { return parent_; }
  [[nodiscard]] std::span<const std::uint64_t> stored_sizes() const noexcept { return size_; }
  [[nodiscard]] std::span<const std::uint32_t> ranks() const noexcept { return rank_; }
  [[nodiscard]] variant get_variant() const noexcept { return variant_; }
  [[nodiscard]] std::uint64_t op_clock() const noexcept { return op_clock_; }

  /// True when every parent chain reaches a self-loop within n steps.
  static bool is_forest(std::span<const node_id> parent) {
    const std::size_t n = parent.size();
    // 0 = unvisited, 1 = on current chain, 2 = known to reach a root
    std::vector<std::uint8_t> mark(n, 0);
    std::vector<node_id> chain;
    for (std::size_t s = 0; s < n; ++s) {
      chain.clear();
      node_id x = static_cast<node_id>(s);
      while (mark[x] == 0) {
        mark[x] = 1;
        chain.push_back(x);
        if (parent[x] >= n) return false;
        if (parent[x] == x) break;
        x = parent[x];
      }
      if (mark[x] == 1 && parent[x] != x) return false;
      for (node_id c : chain) mark[c] = 2;
    }
    return true;
  }

 private:
  void check(node_id p) const {
    if (p >= parent_.size()) throw std::out_of_range("node id " + std::to_string(p) + " out of range");
  }

  void notify_begin(step_kind kind, std::uint64_t step) {
    if constexpr (observed) {
      if (observer_) observer_->on_step_begin(kind, step);
    }
  }

  void notify_end(step_kind kind, std::uint64_t step) {
    if constexpr (observed) {
      if (observer_) observer_->on_step_end(kind, step);
    }
  }

  // Two passes, rewriting bottom-up. Same final pointers as find_internal.
  node_id find_fast(node_id p) {
    node_id root = p;
    while (parent_[root] != root) root = parent_[root];
    if (variant_.compress == compression::on) {
      while (parent_[p] != root && p != root) {
        const node_id next = parent_[p];
        parent_[p] = root;
        p = next;
      }
    }
    return root;
  }

  node_id find_internal(node_id p, find_context ctx) {
    path_.clear();
    path_.push_back(p);
    while (parent_[path_.back()] != path_.back()) path_.push_back(parent_[path_.back()]);
    const node_id root = path_.back();
    if constexpr (observed) {
      if (observer_) observer_->on_find_path(path_, ctx);
    }
    if (variant_.compress == compression::on && path_.size() > 2) {
      // path_[size-2] already points at the root.
      for (std::size_t i = path_.size() - 2; i-- > 0;) {
        const node_id x = path_[i];
        const node_id old = parent_[x];
        parent_[x] = root;
        if constexpr (observed) {
          if (observer_) observer_->on_parent_change({x, old, root, change_cause::compression, ctx.step});
        }
      }
    }
    if constexpr (observed) {
      if (observer_) observer_->on_find_done(path_, ctx);
    }
    return root;
  }

  variant variant_;
  std::vector<node_id> parent_;
  std::vector<std::uint64_t> size_;
  std::vector<std::uint32_t> rank_;
  std::vector<node_id> path_;
  std::uint64_t op_clock_ = 0;
  Observer* observer_ = nullptr;
};

using disjoint_set = basic_disjoint_set<null_observer>;

}  // namespace ufpot
