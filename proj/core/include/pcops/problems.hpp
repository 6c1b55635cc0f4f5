#pragma once

#include <cstdint>

#include "pcops/functions.hpp"

namespace pcops {

/// A^T A / m style least-squares instance with an l1 regulariser.
struct LassoInstance {
  SmoothConvexFn smooth;   // 1/2 ||D x - y||^2 up to a constant, as 1/2 x'Ax - b'x
  ProxableFn smooth_prox;  // the same quadratic, for prox-based splittings
  ProxableFn l1;
  Vector x_true;
};

/// Evenly spaced spectrum lo..hi with both endpoints exact.
Vector linear_spectrum(Index n, double lo, double hi);

/// Q diag(eigenvalues) Q^T with Q from the QR factorisation of a Gaussian
/// matrix. b is Gaussian unless given. L defaults to the largest eigenvalue.
SmoothConvexFn spd_quadratic(const Vector& eigenvalues, std::uint64_t seed,
                             const Vector* b = nullptr, double lipschitz = 0.0);

struct LassoOptions {
  Index n = 20;
  Index m = 40;
  Index nnz = 5;
  std::uint64_t seed = 0;
  double weight = 0.1;
  double noise = 0.01;
};

/// Gaussian design D / sqrt(m), nnz-sparse ground truth with entries of
/// magnitude >= 1, y = D x_true + noise. A = D^T D, b = D^T y.
LassoInstance lasso(const LassoOptions& options);

}  // namespace pcops
