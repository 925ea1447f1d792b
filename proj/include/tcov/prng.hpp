#pragma once

#include <cstdint>

namespace tcov {

// splitmix64: the fixed generator behind every seeded instance, so the same
// seed yields the same instance on any platform.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound > 0. Simple modulo; bias is irrelevant for
  // instance generation and keeps the stream reproducible.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

}  // namespace tcov
