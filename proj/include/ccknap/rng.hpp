#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

// Reproducibility contract: every stochastic component draws from a
// std::mt19937_64 engine through the mapping functions below. The engine and
// the mappings are fully specified, so identical seeds produce identical
// streams on every platform. Standard-library distributions are avoided on
// purpose (their output is implementation-defined).
namespace ccknap::rng {

using Engine = std::mt19937_64;

/// FNV-1a over a byte string; used to fold textual identifiers into seeds.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Combines a running seed with one more value (splitmix64 finalizer).
inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4));
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

/// Seed for one run, derived from the master seed, a cell tag and the
/// repetition index. Adding new cells never perturbs existing streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index) {
  return mix(mix(master, fnv1a(tag)), index);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, n); n must be positive.
inline std::uint64_t below(Engine& eng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = eng();
    if (x >= threshold) return x % n;
  }
}

/// Uniform integer in [lo, hi], inclusive.
inline long long uniform_int(Engine& eng, long long lo, long long hi) {
  return lo + static_cast<long long>(
                  below(eng, static_cast<std::uint64_t>(hi - lo) + 1));
}

/// Standard normal deviate (Box-Muller; consumes two uniforms per call).
inline double normal(Engine& eng) {
  double u1 = uniform01(eng);
  while (u1 == 0.0) u1 = uniform01(eng);
  const double u2 = uniform01(eng);
  const double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace ccknap::rng
