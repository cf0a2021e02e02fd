#pragma once

#include <cstdint>

namespace vaa {

/// SplitMix64 output function (Steele, Lea, Flood 2014).
[[nodiscard]] constexpr std::uint64_t splitmix64_mix(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/**
 * @brief Counter-based SplitMix64 stream.
 *
 * Draw j of stream `key` is splitmix64_mix(key + (j + 1) * kGoldenGamma),
 * so any draw can be reproduced from (key, j) alone. Independent streams per
 * Monte Carlo run use key = splitmix64_mix(seed + (run + 1) * kGoldenGamma).
 */
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr CounterRng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return CounterRng(splitmix64_mix(seed + (stream + 1) * kGoldenGamma));
  }

  constexpr std::uint64_t next_u64() { return splitmix64_mix(key_ + (++counter_) * kGoldenGamma); }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n) for n < 2^53, floor(uniform() * n).
  constexpr std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

  [[nodiscard]] constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace vaa
