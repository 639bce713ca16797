#pragma once

#include <cstdint>
#include <random>

namespace certlab {

using Rng = std::mt19937_64;

// Deterministic per-work-unit seed derivation (splitmix64 finalizer), so
// parallel sweeps reproduce regardless of thread scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t unit) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (unit + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Bernoulli draw with double-precision probability.
inline bool chance(Rng& rng, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

}  // namespace certlab
