#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ospchain/gaussian_rational.hpp"

namespace ospchain {

/// Deterministic sampler of bounded rationals. Uses raw mt19937_64 output
/// with rejection, so the stream is identical on every standard library.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed, long bound = 100) : rng_(seed), bound_(bound) {}

  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi);
  /// Uniform double in [0, 1).
  double uniform_real();
  /// p/q with |p| <= bound, 1 <= q <= bound, never zero.
  GaussianRational nonzero_rational();
  GaussianRational rational();
  std::vector<GaussianRational> rationals(std::size_t count);
  std::vector<std::pair<GaussianRational, GaussianRational>> pairs(std::size_t count);

  long bound() const noexcept { return bound_; }

 private:
  std::mt19937_64 rng_;
  long bound_;
};

}  // namespace ospchain
