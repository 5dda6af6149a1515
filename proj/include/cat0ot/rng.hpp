#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace cat0ot {

/// SplitMix64 run in counter mode: draw k of stream `key` is
/// mix64(key + (k + 1) * 0x9E3779B97F4A7C15). Every draw is a pure function of
/// (key, k), so streams are reproducible from the seed alone.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  /// Stream for an experiment: key = mix64(seed ^ fnv1a64(tag)).
  static CounterRng substream(std::uint64_t seed, std::string_view tag);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal by Box-Muller (consumes two draws).
  double normal();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix64(std::uint64_t z);
  static std::uint64_t fnv1a64(std::string_view s);

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace cat0ot
