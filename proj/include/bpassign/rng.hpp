#pragma once

#include <cstdint>
#include <random>

namespace bpassign {

// Random numbers used throughout the library come from two fixed sources so
// that every experiment replays bit-for-bit on any conforming platform:
//
//  * SeededStream wraps std::mt19937_64, whose output sequence is pinned by
//    the C++ standard. Uniform and exponential variates are derived from the
//    raw 64-bit words here, never through <random> distributions (those are
//    implementation-defined).
//  * keyed_bits() is the SplitMix64 finalizer applied to a (key, counter)
//    pair. It is used as a counter-based generator where values must be
//    addressable without replaying a stream (PWIT node weights).

/// SplitMix64 mixing function.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for an independent sub-stream `stream` of a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Counter-based 64-bit word for (key, counter).
constexpr std::uint64_t keyed_bits(std::uint64_t key, std::uint64_t counter) {
  return splitmix64(key ^ splitmix64(counter));
}

/// Top 53 bits mapped to [0, 1).
constexpr double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Exp(rate) variate by inversion of a [0,1) uniform.
double exponential_from_bits(std::uint64_t bits, double rate = 1.0);

class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform() { return unit_from_bits(engine_()); }
  double exponential(double rate = 1.0) { return exponential_from_bits(engine_(), rate); }
  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace bpassign
