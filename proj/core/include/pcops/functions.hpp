#pragma once

#include <optional>
#include <string>
#include <variant>

#include "pcops/convex_set.hpp"
#include "pcops/operator_expr.hpp"
#include "pcops/point.hpp"

namespace pcops {

/// Largest eigenvalue of a symmetric PSD matrix by power iteration. Stops when
/// successive Rayleigh quotients agree to `tol` relative.
double power_iteration_lambda_max(const Matrix& A, double tol = 1e-8, int max_iter = 100000);

/// Convex f with L-Lipschitz gradient. Only the quadratic
/// f(x) = 1/2 x^T A x - b^T x is provided.
class SmoothConvexFn {
 public:
  /// Validates symmetry and positive semidefiniteness of A (1e-10) and that
  /// `lipschitz` is not below lambda_max(A) (power iteration, 1e-8 relative).
  static SmoothConvexFn quadratic(Matrix A, Vector b, double lipschitz);

  Index dim() const noexcept { return b_.size(); }
  double lipschitz() const noexcept { return lipschitz_; }
  const Matrix& A() const noexcept { return A_; }
  const Vector& b() const noexcept { return b_; }

  double value(const Vector& x) const { return 0.5 * x.dot(A_ * x) - b_.dot(x); }
  Vector gradient(const Vector& x) const { return A_ * x - b_; }

  /// A^{-1} b when A is positive definite.
  std::optional<Point> minimizer() const;

 private:
  SmoothConvexFn(Matrix A, Vector b, double L) : A_(std::move(A)), b_(std::move(b)), lipschitz_(L) {}
  Matrix A_;
  Vector b_;
  double lipschitz_;
};

/// (1/L) grad f as a certified atom. A nonexpansive gradient of a convex
/// function is firmly nonexpansive, hence ISM(1).
OperatorExpr normalized_gradient(const SmoothConvexFn& f);

/// x - gamma grad f(x), built as Displacement(Scale(gamma L, (1/L) grad f)) so
/// the certificate is derived, not asserted: Pseudocontractive(2/(gamma L) - 1).
/// gamma must lie in (0, 2/L).
OperatorExpr gradient_step(const SmoothConvexFn& f, double gamma);

/// Convex functions with closed-form proximal maps.
class ProxableFn {
 public:
  /// w ||z||_1, w >= 0.
  struct L1 {
    double weight;
  };
  /// 1/2 ||z||^2.
  struct HalfNormSq {};
  struct Indicator {
    ConvexSet set;
  };
  /// 1/2 z^T A z - b^T z, A symmetric PSD.
  struct Quadratic {
    Matrix A;
    Vector b;
  };

  static ProxableFn l1(double weight);
  static ProxableFn half_norm_sq();
  static ProxableFn indicator(ConvexSet set);
  static ProxableFn quadratic(Matrix A, Vector b);

  const std::variant<L1, HalfNormSq, Indicator, Quadratic>& kind() const noexcept { return kind_; }
  std::string kind_name() const;
  /// Intrinsic dimension, if the function fixes one.
  std::optional<Index> dim() const;

  /// f(z); +inf outside the set for an indicator.
  double value(const Vector& z) const;

 private:
  template <class K>
  explicit ProxableFn(K k) : kind_(std::move(k)) {}
  std::variant<L1, HalfNormSq, Indicator, Quadratic> kind_;
};

/// argmin_z f(z) + ||z - x||^2 / (2 lambda). lambda > 0.
Point prox(const ProxableFn& f, double lambda, const Point& x);

/// prox_{f,lambda} on R^dim as a certified atom: Pseudocontractive(1). For a
/// quadratic the factorisation of I + lambda A is computed once here.
OperatorExpr prox_operator(const ProxableFn& f, double lambda, Index dim);

inline constexpr double kSubgradientTol = 1e-8;

/// Size of the violation of g in df(z): 0 for an exact subgradient.
double subgradient_violation(const ProxableFn& f, const Vector& z, const Vector& g);

/// True iff g is a subgradient of f at z within kSubgradientTol.
bool subgradient_check(const ProxableFn& f, const Point& z, const Point& g);

}  // namespace pcops
