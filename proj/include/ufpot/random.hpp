#pragma once

#include <cstdint>

namespace ufpot {

__extension__ using uint128 = unsigned __int128;

/// SplitMix64 (Steele, Lea, Flood 2014). Each call advances the state by the
/// golden-gamma constant 0x9E3779B97F4A7C15 and returns
///
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Derived draws:
///   below(n)   = high 64 bits of the 128-bit product next() * n
///   unit()     = (next() >> 11) * 2^-53, in [0, 1)
class splitmix64 {
 public:
  explicit constexpr splitmix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>((static_cast<uint128>(next()) * n) >> 64);
  }

  constexpr double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace ufpot
