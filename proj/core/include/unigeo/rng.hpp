#pragma once

#include <cstdint>
#include <limits>

namespace unigeo {

/// SplitMix64 run in counter mode: draw i of a stream with key k is
/// mix(k + (i + 1) * 0x9E3779B97F4A7C15). A stream is fully determined by its
/// key, so substreams derived from (seed, suite, trial) reproduce the same
/// numbers whatever order or thread they are consumed in.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Independent stream keyed by (this key, index).
  CounterRng substream(std::uint64_t index) const noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal (Box-Muller; the paired value is discarded).
  double normal() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Key of the stream used by trial `trial` of suite `suite` under `seed`.
std::uint64_t trial_stream_key(std::uint64_t seed, std::uint64_t suite, std::uint64_t trial) noexcept;

}  // namespace unigeo
