#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcops/operator_expr.hpp"
#include "pcops/point.hpp"

namespace pcops {

/// Record of x^{k+1} = T x^k. points holds x^0..x^N and residual_sq[k] is
/// ||x^k - x^{k+1}||^2 = ||G x^k||^2, so points.size() == residual_sq.size() + 1.
struct IterationTrace {
  std::vector<Point> points;
  std::vector<double> residual_sq;
  /// ||x^k - x*|| for k = 0..N-1, once a reference is attached.
  std::optional<std::vector<double>> dist_to_ref;
  std::size_t requested = 0;
  std::uint64_t seed = 0;
  std::string method;

  std::size_t iterations() const noexcept { return residual_sq.size(); }
  /// G x^k = x^k - x^{k+1}.
  Vector displacement(std::size_t k) const { return points[k].coords() - points[k + 1].coords(); }
};

/// Runs up to N steps, stopping after the first step whose residual norm
/// ||G x^k|| is <= stop_tol. Non-finite iterates raise NumericError with the
/// iteration index. `seed` is recorded only; iteration is deterministic.
IterationTrace iterate(const OperatorExpr& T, const Point& x0, std::size_t N, double stop_tol,
                       std::uint64_t seed = 0);

struct FixedPointRef {
  Point point;
  /// ||x - T x|| at point.
  double residual;
  double tolerance;
  std::size_t iterations;
};

inline constexpr std::size_t kFixedPointCap = 1'000'000;

/// Iterates T from x0 until ||x - T x|| <= tol. Requires an averaged
/// (pseudocontractive) certificate. Throws NoConvergenceError, carrying the
/// best residual seen, after `cap` iterations.
FixedPointRef find_fixed_point(const OperatorExpr& T, const Point& x0, double tol,
                               std::size_t cap = kFixedPointCap);

/// Fills trace.dist_to_ref with ||x^k - ref|| for k = 0..N-1, one entry per
/// residual row.
void attach_reference(IterationTrace& trace, const Point& ref);

}  // namespace pcops
