#pragma once

#include <cstdint>

namespace wwlab {

// splitmix64. Used instead of std::mt19937 + distributions so that streams
// are identical across platforms and standard library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] (small ranges; modulo bias negligible for
  // the ranges used here and, more importantly, deterministic).
  long long next_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t s_;
};

// Independent per-case stream: scramble (base, index) through one splitmix
// round so worker assignment never affects the draw for a given index.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 g(base ^ (0x632be59bd9b4e019ULL * (index + 1)));
  return g.next();
}

}  // namespace wwlab
