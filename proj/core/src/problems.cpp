#include "pcops/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "pcops/errors.hpp"

namespace pcops {

namespace {

Vector gaussian_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = nd(rng);
  return v;
}

Matrix gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = nd(rng);
  return m;
}

}  // namespace

Vector linear_spectrum(Index n, double lo, double hi) {
  if (n < 1) throw DimError("linear_spectrum: n must be >= 1");
  if (!(lo >= 0.0 && hi >= lo)) throw ParamError("spectrum must satisfy 0 <= lo <= hi");
  Vector eig(n);
  for (Index i = 0; i < n; ++i)
    eig[i] = n == 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  eig[0] = n == 1 ? hi : lo;
  eig[n - 1] = hi;
  return eig;
}

SmoothConvexFn spd_quadratic(const Vector& eigenvalues, std::uint64_t seed, const Vector* b,
                             double lipschitz) {
  const Index n = eigenvalues.size();
  if (n < 1) throw DimError("spd_quadratic: need at least one eigenvalue");
  if ((eigenvalues.array() < 0.0).any()) throw ParamError("spd_quadratic: eigenvalues must be >= 0");
  std::mt19937_64 rng(seed);
  const Matrix Q = Eigen::HouseholderQR<Matrix>(gaussian_matrix(rng, n, n)).householderQ();
  Matrix A = Q * eigenvalues.asDiagonal() * Q.transpose();
  A = (0.5 * (A + A.transpose())).eval();
  Vector rhs = b ? *b : gaussian_vector(rng, n);
  if (rhs.size() != n) throw DimError("spd_quadratic: b has the wrong length");
  const double L = lipschitz > 0.0 ? lipschitz : eigenvalues.maxCoeff();
  return SmoothConvexFn::quadratic(std::move(A), std::move(rhs), L);
}

LassoInstance lasso(const LassoOptions& o) {
  if (o.n < 1 || o.m < 1) throw DimError("lasso: n and m must be >= 1");
  if (o.nnz < 0 || o.nnz > o.n) throw ParamError("lasso: nnz must lie in [0, n]");
  std::mt19937_64 rng(o.seed);

  const Matrix D = gaussian_matrix(rng, o.m, o.n) / std::sqrt(static_cast<double>(o.m));
  std::vector<Index> support(static_cast<std::size_t>(o.n));
  std::iota(support.begin(), support.end(), Index{0});
  std::shuffle(support.begin(), support.end(), rng);
  Vector x_true = Vector::Zero(o.n);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (Index i = 0; i < o.nnz; ++i) {
    const double v = nd(rng);
    x_true[support[static_cast<std::size_t>(i)]] = (v >= 0 ? 1.0 : -1.0) * (1.0 + std::abs(v));
  }
  const Vector y = D * x_true + o.noise * gaussian_vector(rng, o.m);

  Matrix A = D.transpose() * D;
  A = (0.5 * (A + A.transpose())).eval();
  const Vector b = D.transpose() * y;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A, Eigen::EigenvaluesOnly);
  const double L = eig.eigenvalues().maxCoeff();
  return LassoInstance{SmoothConvexFn::quadratic(A, b, L), ProxableFn::quadratic(A, b),
                       ProxableFn::l1(o.weight), x_true};
}

}  // namespace pcops
