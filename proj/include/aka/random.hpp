#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "aka/group.hpp"

namespace aka {

/// Seedable generator behind every random choice in the library. The
/// Mersenne Twister output sequence is fixed by the C++ standard, so a seed
/// reproduces the same values on every conforming platform.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer with `bits` random bits.
  Integer random_bits(unsigned bits) {
    Integer v = 0;
    unsigned filled = 0;
    while (filled < bits) {
      unsigned take = std::min(64u, bits - filled);
      std::uint64_t word = next_u64();
      if (take < 64) word &= (std::uint64_t{1} << take) - 1;
      v = (v << take) | word;
      filled += take;
    }
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

/// Rejection sampling of a uniform scalar in [1, q-1].
inline Scalar random_nonzero_scalar(const Curve& curve, DeterministicRng& rng) {
  const Integer& q = curve.order();
  unsigned bits = boost::multiprecision::msb(q) + 1;
  for (;;) {
    Integer candidate = rng.random_bits(bits);
    if (candidate >= 1 && candidate < q) return curve.scalar(candidate);
  }
}

}  // namespace aka
