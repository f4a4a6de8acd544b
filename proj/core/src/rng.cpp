#include "unigeo/rng.hpp"

#include <cmath>
#include <numbers>

namespace unigeo {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

CounterRng::result_type CounterRng::operator()() noexcept {
  ++counter_;
  return splitmix64(key_ + counter_ * kGamma);
}

CounterRng CounterRng::substream(std::uint64_t index) const noexcept {
  return CounterRng(splitmix64(key_ ^ splitmix64(index + kGamma)));
}

double CounterRng::uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t trial_stream_key(std::uint64_t seed, std::uint64_t suite, std::uint64_t trial) noexcept {
  return CounterRng(seed).substream(suite).substream(trial).key();
}

}  // namespace unigeo
