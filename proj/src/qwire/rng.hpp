#pragma once

#include <cstdint>

namespace qwire {

// SplitMix64 (Steele/Lea/Flood; Vigna's fixed-increment variant). Chosen for
// its splittable keying: a stream is a pure function of its 64-bit seed, so
// disorder realizations can be generated independently in any order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in the open interval (0, 1); 53-bit mantissa.
  double next_unit() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Stateless finalizer, used to derive stream keys.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Derives a decorrelated per-stream seed from (master_seed, stream_index).
std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t stream_index);

// Standard normal deviates via Box-Muller on a SplitMix64 stream. The draw
// sequence is fixed by the seed alone (no platform-dependent library calls),
// which the reproducibility contract requires.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : rng_(stream_key(master_seed, stream_index)) {}

  double next();

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qwire
