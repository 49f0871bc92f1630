// Deterministic random draws. std::mt19937_64's output sequence is fixed by
// the standard; the std:: distributions are not, so the mappings from raw
// engine output to values live here.
#pragma once

#include <cstdint>
#include <random>

namespace sigtensor {

// Uniform in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [-1, 1).
inline double uniform_symmetric(std::mt19937_64& rng) {
  return 2.0 * uniform_unit(rng) - 1.0;
}

// Uniform integer in [lo, hi]. Modulo bias is negligible for the small ranges
// used here (|hi-lo| << 2^64).
inline long uniform_int(std::mt19937_64& rng, long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

// splitmix64 finalizer; used to derive independent per-cell seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return mix_seed(a ^ mix_seed(b));
}

}  // namespace sigtensor
