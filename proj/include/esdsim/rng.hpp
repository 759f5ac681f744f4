#pragma once

#include <cstdint>

namespace esd {

// Counter-addressed splittable random stream. A stream is a 64-bit state;
// child(i) derives an independent stream from (state, i) without touching
// the parent, so substreams for (seed, round, molecule) can be built in any
// order on any thread and still produce identical draws.
class SplitStream {
 public:
  explicit SplitStream(std::uint64_t seed) : state_(mix(seed ^ kGolden)) {}

  // Independent substream addressed by index. Pure: the parent is unchanged.
  SplitStream child(std::uint64_t index) const {
    return SplitStream(mix(state_ ^ mix(index + kGolden)), Raw{});
  }

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform double in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  struct Raw {};
  SplitStream(std::uint64_t state, Raw) : state_(state) {}

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  std::uint64_t state_;
};

}  // namespace esd
