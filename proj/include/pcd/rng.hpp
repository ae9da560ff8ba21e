#pragma once

#include <cstdint>

namespace pcd {

/// Counter-based pseudorandom generator (SplitMix64 finalizer over a Weyl sequence).
///
/// The k-th draw is a pure function of (seed, k), so any draw can be produced
/// without generating its predecessors and runs can be reproduced bit-exactly
/// from the seed alone, across platforms and reimplementations.
///
/// Algorithm: z = seed + (k+1) * 0x9E3779B97F4A7C15, then the SplitMix64 mix
///   z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27;  z *= 0x94D049BB133111EB;
///   z ^= z >> 31;
/// Doubles take the top 53 bits: u = (z >> 11) * 2^-53, uniform in [0, 1).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t index) const {
    std::uint64_t z = seed_ + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) for the given draw index.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace pcd
