#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufpot/random.hpp"

namespace ufpot {

inline constexpr std::uint64_t sat_cap = std::uint64_t{1} << 62;

/// Non-negative integer that saturates at 2^62. A saturated value compares
/// greater than every unsaturated one, so comparisons against quantities
/// below the cap stay exact.
class sat_int {
 public:
  constexpr sat_int() = default;

  static constexpr sat_int of(std::uint64_t v) noexcept { return v >= sat_cap ? saturated_value() : sat_int(v, false); }
  static constexpr sat_int saturated_value() noexcept { return sat_int(sat_cap, true); }

  [[nodiscard]] constexpr std::uint64_t value() const noexcept { return value_; }
  [[nodiscard]] constexpr bool saturated() const noexcept { return saturated_; }

  friend constexpr bool operator==(sat_int a, sat_int b) noexcept {
    return a.saturated_ == b.saturated_ && a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(sat_int a, sat_int b) noexcept {
    if (a.saturated_ != b.saturated_) return a.saturated_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(sat_int a, std::uint64_t b) noexcept { return !a.saturated_ && a.value_ == b; }
  friend constexpr std::strong_ordering operator<=>(sat_int a, std::uint64_t b) noexcept {
    if (a.saturated_) return std::strong_ordering::greater;
    return a.value_ <=> b;
  }

 private:
  constexpr sat_int(std::uint64_t v, bool s) noexcept : value_(v), saturated_(s) {}

  std::uint64_t value_ = 0;
  bool saturated_ = false;
};

/// A_0(l) = l + 1, A_{k+1}(l) = A_k^{(l+1)}(1). Levels 0..3 use their closed
/// forms (l+1, l+2, 2l+3, 2^{l+3}-3); higher levels iterate the level below
/// until the value saturates.
constexpr sat_int ackermann(unsigned k, sat_int l) noexcept {
  if (l.saturated()) return sat_int::saturated_value();
  const std::uint64_t x = l.value();
  switch (k) {
    case 0:
      return sat_int::of(x + 1);
    case 1:
      return sat_int::of(x + 2);
    case 2:
      return x >= sat_cap / 2 ? sat_int::saturated_value() : sat_int::of(2 * x + 3);
    case 3:
      return x <= 59 ? sat_int::of((std::uint64_t{1} << (x + 3)) - 3) : sat_int::saturated_value();
    default: {
      sat_int y = sat_int::of(1);
      for (std::uint64_t i = 0; i <= x; ++i) {
        y = ackermann(k - 1, y);
        if (y.saturated()) break;
      }
      return y;
    }
  }
}

constexpr sat_int ackermann(unsigned k, std::uint64_t l) noexcept { return ackermann(k, sat_int::of(l)); }

/// A_k applied `times` times to x.
constexpr sat_int ackermann_iterate(unsigned k, std::uint64_t times, sat_int x) noexcept {
  for (std::uint64_t i = 0; i < times && !x.saturated(); ++i) x = ackermann(k, x);
  return x;
}

/// Number of applications of f until the value is at most 1. Requires
/// f(x) < x for x > 1.
template <class F>
constexpr std::uint64_t star_count(F&& f, std::uint64_t x) {
  std::uint64_t c = 0;
  while (x > 1) {
    x = f(x);
    ++c;
  }
  return c;
}

/// B_k(x) = min{ i : A_k(i) >= x }. Closed forms for k <= 3 and
/// B_{k+1}(x) = max(B_k^*(x) - 1, 0) above.
constexpr std::uint64_t b_level(unsigned k, std::uint64_t x) {
  switch (k) {
    case 0:
      return x <= 1 ? 0 : x - 1;
    case 1:
      return x <= 2 ? 0 : x - 2;
    case 2:
      return x <= 3 ? 0 : (x - 2) / 2;
    case 3: {
      // smallest i with 2^{i+3} >= x + 3
      const uint128 v = static_cast<uint128>(x) + 3;
      unsigned ceil_log = 0;
      while ((static_cast<uint128>(1) << ceil_log) < v) ++ceil_log;
      return ceil_log <= 3 ? 0 : ceil_log - 3;
    }
    default: {
      const std::uint64_t s = star_count([k](std::uint64_t y) { return b_level(k - 1, y); }, x);
      return s == 0 ? 0 : s - 1;
    }
  }
}

/// min{ i : A_i(1) >= n }; at most 5 for any 64-bit n.
constexpr unsigned alpha(std::uint64_t n) noexcept {
  unsigned i = 0;
  while (ackermann(i, 1) < n) ++i;
  return i;
}

/// Applications of log2 until the value is at most 1.
inline int log_star(double x) {
  int c = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++c;
  }
  return c;
}

/// The star operator applied k >= 1 times to the integer-valued floor(log2).
/// Level 1 can be one below the real-valued log_star (5 gives 2 here, 3
/// there).
inline int log_star_k(int k, std::uint64_t x) {
  if (k < 1) throw std::invalid_argument("log_star_k needs k >= 1");
  int c = 0;
  while (x > 1) {
    x = k == 1 ? static_cast<std::uint64_t>(std::bit_width(x) - 1) : static_cast<std::uint64_t>(log_star_k(k - 1, x));
    ++c;
  }
  return c;
}

namespace detail {

template <class Real>
int loghat_impl(int level, Real x, bool& near_one);

template <class Real>
Real loghat_step(int level, Real y, bool& near_one) {
  using std::log2;
  using std::pow;
  const Real inner = level == 1 ? Real(1) + log2(y) : Real(1) + Real(loghat_impl<Real>(level - 1, y, near_one));
  return pow(inner / Real(8), Real(4));
}

template <class Real>
int loghat_impl(int level, Real x, bool& near_one) {
  int c = 0;
  while (x > Real(1)) {
    x = loghat_step<Real>(level, x, near_one);
    if (x > Real(0.99) && x < Real(1.01)) near_one = true;
    ++c;
  }
  return c;
}

}  // namespace detail

/// Iteration count of y <- ((1 + log2 y) / 8)^4 until y <= 1 at level 1, and
/// of y <- ((1 + loghat(level-1, y)) / 8)^4 at higher levels. Inputs whose
/// iterates pass near 1 are re-evaluated in extended precision.
inline int loghat(int level, double x) {
  if (level < 1) throw std::invalid_argument("loghat needs level >= 1");
  bool near_one = false;
  const int c = detail::loghat_impl<double>(level, x, near_one);
  if (!near_one) return c;
  bool ignored = false;
  return detail::loghat_impl<long double>(level, static_cast<long double>(x), ignored);
}

inline int loghat_star(double x) { return loghat(1, x); }

/// 1 / (1 + log2 s) for i = 0, 1 / (1 + loghat(i, s)) otherwise.
inline double level_term(int i, double s) {
  return i == 0 ? 1.0 / (1.0 + std::log2(s)) : 1.0 / (1.0 + static_cast<double>(loghat(i, s)));
}

/// Sum of level_term(i, s) for i in [0, levels).
inline double level_factor(int levels, double s) {
  double f = 0.0;
  for (int i = 0; i < levels; ++i) f += level_term(i, s);
  return f;
}

// ---------------------------------------------------------------------------
// Numeric checks of the comparison lemmas between the modified iterations and
// the classical iterated logarithms.

struct check_report {
  std::string name;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;

  [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
};

/// Powers of two 2^lo_exp..2^hi_exp plus `random_points` log-uniform samples
/// in the same range.
inline std::vector<double> log_grid(int lo_exp, int hi_exp, std::size_t random_points, std::uint64_t seed) {
  std::vector<double> xs;
  for (int e = lo_exp; e <= hi_exp; ++e) xs.push_back(std::ldexp(1.0, e));
  splitmix64 rng(seed);
  for (std::size_t i = 0; i < random_points; ++i) {
    const double e = lo_exp + rng.unit() * (hi_exp - lo_exp);
    xs.push_back(std::exp2(e));
  }
  return xs;
}

/// f(x) = (1 + log2(x) / 3)^2
inline double badlog(double x) {
  const double t = 1.0 + std::log2(x) / 3.0;
  return t * t;
}

/// f(f(x)) <= log2 x for every sample x >= 8; smaller samples are skipped.
inline check_report check_appendix_b1(std::span<const double> xs) {
  check_report r{"B.1 f(f(x)) <= log2 x", 0, 0, {}};
  for (double x : xs) {
    if (!(x >= 8.0)) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    const double lhs = badlog(badlog(x));
    if (!(lhs <= std::log2(x)))
      r.failures.push_back("x=" + std::to_string(x) + " f(f(x))=" + std::to_string(lhs));
  }
  return r;
}

/// loghat_star(x) <= 2 log*(x) at every sample, and ((1 + log2 y) / 8)^4 <= y / 2
/// for every sample y >= 2.
inline check_report check_appendix_b2(std::span<const double> xs) {
  check_report r{"B.2 loghat*(x) <= 2 log*(x)", 0, 0, {}};
  for (double x : xs) {
    if (!(x >= 0.0)) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    const int lh = loghat_star(x);
    const int ls = log_star(x);
    if (lh > 2 * ls)
      r.failures.push_back("x=" + std::to_string(x) + " loghat*=" + std::to_string(lh) + " log*=" + std::to_string(ls));
    if (x >= 2.0) {
      const double g = std::pow((1.0 + std::log2(x)) / 8.0, 4.0);
      if (!(g <= x / 2.0)) r.failures.push_back("x=" + std::to_string(x) + " step exceeds x/2");
    }
  }
  return r;
}

/// For each level k in [k_lo, k_hi]:
///   B_{k+3}(x) <= log2^{*k}(x)        when the right side exceeds 1 (k >= 1 only)
///   B_{k+3}(x) >= log2^{*(2k+3)}(x)   when both sides exceed 1
/// Samples are truncated to integers.
inline check_report check_appendix_a_sandwich(unsigned k_lo, unsigned k_hi, std::span<const double> xs) {
  check_report r{"A sandwich B_{k+3} vs log^{*k}", 0, 0, {}};
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    for (double xd : xs) {
      if (!(xd >= 1.0) || xd >= 0x1.0p63) {
        ++r.skipped;
        continue;
      }
      const auto x = static_cast<std::uint64_t>(xd);
      const std::uint64_t b = b_level(k + 3, x);
      bool any = false;
      if (k >= 1) {
        const int upper = log_star_k(static_cast<int>(k), x);
        if (upper > 1) {
          any = true;
          if (b > static_cast<std::uint64_t>(upper))
            r.failures.push_back("upper k=" + std::to_string(k) + " x=" + std::to_string(x) + " B=" +
                                 std::to_string(b) + " log^{*k}=" + std::to_string(upper));
        }
      }
      const int lower = log_star_k(static_cast<int>(2 * k + 3), x);
      if (lower > 1 && b > 1) {
        any = true;
        if (b < static_cast<std::uint64_t>(lower))
          r.failures.push_back("lower k=" + std::to_string(k) + " x=" + std::to_string(x) + " B=" +
                               std::to_string(b) + " log^{*(2k+3)}=" + std::to_string(lower));
      }
      if (any) ++r.checked;
      else ++r.skipped;
    }
  }
  return r;
}

/// One row of the bound-function table.
struct bound_row {
  std::uint64_t n;
  double log2n;
  double log2log2n;  // log2(max(log2 n, 1)), so 0 for n <= 2
  int log_star;
  int loghat_star;
  int loghat2;
  unsigned alpha;
};

inline bound_row bounds_for(std::uint64_t n) {
  const double x = static_cast<double>(n);
  const double l = std::log2(x);
  return {n, l, std::log2(std::max(l, 1.0)), log_star(x), loghat_star(x), loghat(2, x), alpha(n)};
}

}  // namespace ufpot
