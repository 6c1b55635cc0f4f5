#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "pcops/point.hpp"

namespace pcops {

inline constexpr double kDefaultSampleRadius = 10.0;

/// Points with i.i.d. N(0, radius^2) coordinates from a seeded mt19937_64.
class GaussianSampler {
 public:
  GaussianSampler(Index dim, std::uint64_t seed, double radius = kDefaultSampleRadius);

  Vector next();
  Index dim() const noexcept { return dim_; }

 private:
  Index dim_;
  double radius_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Invokes fn(x, y) on `count` sampled pairs. The first pair anchors x at the
/// origin so near-origin behaviour is always exercised.
template <class Fn>
void for_each_pair(Index dim, std::size_t count, std::uint64_t seed, double radius, Fn&& fn) {
  GaussianSampler sampler(dim, seed, radius);
  for (std::size_t i = 0; i < count; ++i) {
    Vector x = sampler.next();
    Vector y = sampler.next();
    if (i == 0) x.setZero();
    fn(static_cast<const Vector&>(x), static_cast<const Vector&>(y));
  }
}

}  // namespace pcops
