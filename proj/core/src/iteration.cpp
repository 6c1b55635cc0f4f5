#include "pcops/iteration.hpp"

#include <cmath>
#include <limits>

#include "format.hpp"
#include "pcops/errors.hpp"

namespace pcops {

IterationTrace iterate(const OperatorExpr& T, const Point& x0, std::size_t N, double stop_tol,
                       std::uint64_t seed) {
  if (x0.dim() != T.dim())
    throw DimError("iterate: x0 has dimension " + std::to_string(x0.dim()) + ", operator " +
                   std::to_string(T.dim()));
  if (N < 1) throw ParamError("iterate: N must be >= 1");
  if (!(stop_tol >= 0.0)) throw ParamError("iterate: stop_tol must be >= 0");

  IterationTrace trace;
  trace.requested = N;
  trace.seed = seed;
  trace.method = T.describe();
  trace.points.reserve(N + 1);
  trace.residual_sq.reserve(N);
  trace.points.push_back(x0);

  const double stop_sq = stop_tol * stop_tol;
  for (std::size_t k = 0; k < N; ++k) {
    const Vector& x = trace.points.back().coords();
    Vector next;
    try {
      next = T.apply(x);
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(k) + ": " + e.what());
    }
    if (!next.allFinite())
      throw NumericError("iteration " + std::to_string(k) + ": non-finite iterate");
    const double r = (x - next).squaredNorm();
    trace.residual_sq.push_back(r);
    trace.points.emplace_back(std::move(next));
    if (r <= stop_sq) break;
  }
  return trace;
}

FixedPointRef find_fixed_point(const OperatorExpr& T, const Point& x0, double tol, std::size_t cap) {
  if (!T.certificate().is_averaged_family())
    throw CertError("find_fixed_point requires a pseudocontractive operator, got " +
                    T.certificate().describe());
  if (!(tol > 0.0)) throw ParamError("find_fixed_point: tol must be > 0");
  if (x0.dim() != T.dim()) throw DimError("find_fixed_point: dimension mismatch");

  Vector x = x0.coords();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= cap; ++k) {
    Vector tx = T.apply(x);
    if (!tx.allFinite()) throw NumericError("find_fixed_point: non-finite iterate at " + std::to_string(k));
    const double r = (x - tx).norm();
    best = std::min(best, r);
    if (r <= tol) return FixedPointRef{Point(std::move(x)), r, tol, k};
    x = std::move(tx);
  }
  throw NoConvergenceError("find_fixed_point: no convergence to " + detail::shortest(tol) +
                               " within " + std::to_string(cap) + " iterations (best residual " +
                               detail::shortest(best) + ")",
                           best, cap);
}

void attach_reference(IterationTrace& trace, const Point& ref) {
  std::vector<double> d;
  d.reserve(trace.iterations());
  for (std::size_t k = 0; k < trace.iterations(); ++k) d.push_back(distance(trace.points[k], ref));
  trace.dist_to_ref = std::move(d);
}

}  // namespace pcops
