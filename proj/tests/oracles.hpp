#pragma once

// Slow reference implementations used only by the tests. They follow the
// definitions directly and share no code with the library.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

/// A_k(l) tabulated from A_0(l) = l + 1, A_{k+1}(0) = A_k(1) and
/// A_{k+1}(l) = A_k(A_{k+1}(l - 1)). Values above `limit` are not stored.
class ackermann_table {
 public:
  explicit ackermann_table(std::uint64_t limit, unsigned levels = 8) : limit_(limit) {
    std::vector<std::uint64_t> base;
    for (std::uint64_t l = 0; l + 1 <= limit; ++l) base.push_back(l + 1);
    rows_.push_back(std::move(base));
    for (unsigned k = 1; k < levels; ++k) {
      std::vector<std::uint64_t> row;
      auto prev = get(k - 1, 1);
      if (prev) {
        row.push_back(*prev);
        while (true) {
          auto next = get(k - 1, row.back());
          if (!next) break;
          row.push_back(*next);
        }
      }
      rows_.push_back(std::move(row));
    }
  }

  /// Exact A_k(l), or nothing when the value exceeds the limit.
  [[nodiscard]] std::optional<std::uint64_t> get(unsigned k, std::uint64_t l) const {
    if (k >= rows_.size() || l >= rows_[k].size()) return std::nullopt;
    return rows_[k][l];
  }

  /// min{ i : A_k(i) >= x } when some tabulated value reaches x.
  [[nodiscard]] std::optional<std::uint64_t> inverse(unsigned k, std::uint64_t x) const {
    for (std::uint64_t i = 0; i < rows_[k].size(); ++i)
      if (rows_[k][i] >= x) return i;
    return std::nullopt;
  }

  [[nodiscard]] std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

/// min{ i : A_i(1) >= n }, where a level whose A_i(1) exceeds the table
/// limit counts as reaching n (valid while n <= limit).
inline unsigned alpha(const ackermann_table& t, std::uint64_t n) {
  for (unsigned i = 0;; ++i) {
    const auto v = t.get(i, 1);
    if (!v || *v >= n) return i;
  }
}

inline int log_star(long double x) {
  int c = 0;
  while (x > 1.0L) {
    x = std::log2(x);
    ++c;
  }
  return c;
}

inline int loghat_star(long double x) {
  int c = 0;
  while (x > 1.0L) {
    x = std::pow((1.0L + std::log2(x)) / 8.0L, 4.0L);
    ++c;
  }
  return c;
}

inline int loghat2(long double x) {
  int c = 0;
  while (x > 1.0L) {
    x = std::pow((1.0L + loghat_star(x)) / 8.0L, 4.0L);
    ++c;
  }
  return c;
}

/// Partition by explicit labels; union relabels the second set.
class label_partition {
 public:
  explicit label_partition(std::size_t n) : label_(n) {
    for (std::size_t i = 0; i < n; ++i) label_[i] = i;
  }
  void unite(std::size_t a, std::size_t b) {
    const auto la = label_[a];
    const auto lb = label_[b];
    if (la == lb) return;
    for (auto& l : label_)
      if (l == lb) l = la;
  }
  [[nodiscard]] bool same(std::size_t a, std::size_t b) const { return label_[a] == label_[b]; }
  [[nodiscard]] std::size_t set_size(std::size_t a) const {
    std::size_t c = 0;
    for (auto l : label_) c += l == label_[a];
    return c;
  }

 private:
  std::vector<std::size_t> label_;
};

}  // namespace oracle
