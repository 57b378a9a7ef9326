#pragma once

// Counter-based random numbers.
//
// Every draw is a pure function of (seed, counter): the 64-bit word at
// position c of stream s is splitmix64_mix(s + (c + 1) * 0x9E3779B97F4A7C15),
// i.e. the c-th output of a SplitMix64 generator seeded with s. Standard
// normals use the Box-Muller transform on the uniform pair at counters
// (2p, 2p + 1): even normal indices take the cosine branch, odd ones the sine
// branch. No rejection step, so draw i never depends on how many draws were
// consumed before it.
//
// Independent streams come from derive_seed(base, index); a trial's stream
// therefore does not depend on which thread runs it or in which order.

#include <cstdint>

namespace lqgame::rng {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Stream seed for sub-stream `index` of `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(mix64(base) ^ mix64(index + kGolden));
}

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix64(seed_ + (counter + 1) * kGolden);
  }

  /// Uniform on (0, 1] with 53 random bits.
  double uniform(std::uint64_t counter) const;

  /// Standard normal number `index` of this stream.
  double normal(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace lqgame::rng
