#include "ospchain/sampling.hpp"

#include <limits>

#include "ospchain/errors.hpp"

namespace ospchain {

long RationalSampler::uniform_int(long lo, long hi) {
  if (hi < lo) throw ValidationError("empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = rng_();
  } while (r >= limit);
  return lo + static_cast<long>(r % span);
}

double RationalSampler::uniform_real() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

GaussianRational RationalSampler::rational() {
  long p = uniform_int(-bound_, bound_);
  long q = uniform_int(1, bound_);
  return {p, q};
}

GaussianRational RationalSampler::nonzero_rational() {
  GaussianRational z;
  do {
    z = rational();
  } while (z.is_zero());
  return z;
}

std::vector<GaussianRational> RationalSampler::rationals(std::size_t count) {
  std::vector<GaussianRational> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(nonzero_rational());
  return out;
}

std::vector<std::pair<GaussianRational, GaussianRational>> RationalSampler::pairs(std::size_t count) {
  std::vector<std::pair<GaussianRational, GaussianRational>> out;
  for (std::size_t k = 0; k < count; ++k) {
    GaussianRational u = nonzero_rational();
    GaussianRational v = nonzero_rational();
    out.emplace_back(std::move(u), std::move(v));
  }
  return out;
}

}  // namespace ospchain
