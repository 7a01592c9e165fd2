#pragma once

#include <cstdint>
#include <random>

namespace altic {

// std::mt19937_64 is fully specified by the standard, so a seed produces the
// same stream on every platform. The distribution helpers below are written
// out by hand because std::uniform_int_distribution and friends are
// implementation-defined and would break cross-platform reproducibility.
using Rng = std::mt19937_64;

// Uniform draw from [0, n). Rejection sampling keeps it bias-free.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Child stream derivation; mixes so that nearby (seed, index) pairs do not
// yield correlated engines (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace altic
