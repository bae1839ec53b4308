#pragma once

#include <cstdint>

namespace pms {

// Counter-based deterministic randomness: stream(seed, index) yields the same
// sequence no matter how work items are scheduled across threads.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1].
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  std::uint64_t next_below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

inline SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  mix.next();
  return mix;
}

}  // namespace pms
