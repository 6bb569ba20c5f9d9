#pragma once

#include <cstdint>

namespace mazeplan {

// SplitMix64 stream. Used instead of <random> engines so that identical seeds
// reproduce identical planner runs on every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Independent child stream; distinct `stream` values give distinct sequences.
  SplitMix64 fork(std::uint64_t stream) const {
    return SplitMix64(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace mazeplan
