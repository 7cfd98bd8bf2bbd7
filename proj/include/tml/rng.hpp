#pragma once

#include <cstdint>
#include <string_view>

namespace tml {

/// Name recorded in run manifests so results can be traced to the generator.
inline constexpr std::string_view kRngAlgorithm = "splitmix64-counter";

/// SplitMix64 finalizer applied to key + (counter + 1) * golden gamma.
///
/// This is the n-th output of a SplitMix64 stream seeded with `key`, but it is
/// computed statelessly, so any draw can be addressed directly by its index.
/// Parallel loops use this to fill disjoint index ranges without sharing state.
constexpr std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter) noexcept {
  std::uint64_t z = key + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit word.
constexpr double to_unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Seed for trial `index` of a run seeded with `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return base + index;
}

/// Sequential view over the counter stream. Cheap to copy; one per thread.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key, std::uint64_t start = 0) noexcept
      : key_(key), counter_(start) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept { return counter_hash(key_, counter_++); }

  constexpr double uniform() noexcept { return to_unit_double((*this)()); }

  /// Unbiased integer in [0, bound) by rejection on the top of the range.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % bound;
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace tml
