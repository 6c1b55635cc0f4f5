#include "pcops/sampling.hpp"

#include "pcops/errors.hpp"

namespace pcops {

GaussianSampler::GaussianSampler(Index dim, std::uint64_t seed, double radius)
    : dim_(dim), radius_(radius), rng_(seed) {
  if (dim < 1) throw DimError("sampler dimension must be >= 1");
  if (!(radius > 0.0)) throw ParamError("sampling radius must be positive");
}

Vector GaussianSampler::next() {
  Vector v(dim_);
  for (Index i = 0; i < dim_; ++i) v[i] = radius_ * normal_(rng_);
  return v;
}

}  // namespace pcops
