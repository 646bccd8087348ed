#include "qwire/rng.hpp"

#include <cmath>
#include <numbers>

namespace qwire {

std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t stream_index) {
  // Two finalizer rounds over (seed, index) decorrelate neighbouring indices.
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (stream_index + 1);
  return SplitMix64::mix(SplitMix64::mix(z) ^ 0x5851F42D4C957F2Dull);
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = rng_.next_unit();
  const double u2 = rng_.next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

}  // namespace qwire
