#pragma once

#include <cstdint>

namespace burn {

// Largest k with k*k <= x. Requires x >= 0.
long long floor_isqrt(long long x);

// Least k with k*k >= x. Requires x >= 0.
int ceil_isqrt(long long x);

// splitmix64. Hand-rolled so that seeded runs are identical across
// platforms and standard libraries.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Rejection sampling keeps it exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }
};

}  // namespace burn
