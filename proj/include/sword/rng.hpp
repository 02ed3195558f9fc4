#pragma once

#include <cstdint>

namespace sword {

// Counter-based 64-bit generator (SplitMix64 core). Substreams are derived
// by hashing the parent state with the child index, so the hierarchy
// stream seed -> per-snapshot substream -> per-probe substream yields the
// same values regardless of evaluation order or parallel schedule.
class Rng {
 public:
  static Rng from_seed(uint64_t seed) { return Rng(mix(seed ^ kGamma)); }

  Rng substream(uint64_t index) const {
    return Rng(mix(state_ ^ mix(index + kGamma)));
  }

  uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double rademacher() { return (next_u64() >> 63) ? 1.0 : -1.0; }

  // Uniform integer in [0, n), n >= 1.
  uint64_t next_below(uint64_t n) {
    // Rejection sampling over the top bits keeps the draw unbiased.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  explicit Rng(uint64_t state) : state_(state) {}

  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace sword
