#include "pcops/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "format.hpp"
#include "pcops/errors.hpp"

#ifndef PCOPS_VERSION
#define PCOPS_VERSION "unknown"
#endif

namespace pcops {

namespace {

using detail::shortest;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kSkipNorm = 1e-12;

// nu * x with the convention that the product vanishes when x does, so an
// infinite modulus (identity) never manufactures a NaN.
double weighted(double nu, double x) { return x == 0.0 ? 0.0 : nu * x; }

std::string nu_text(double nu) { return "nu=" + shortest(nu); }

double initial_distance_sq(const IterationTrace& trace, const std::optional<FixedPointRef>& ref,
                           const char* who) {
  if (!ref) throw InputError(std::string(who) + ": a fixed-point reference is required");
  if (!(ref->residual <= kReferenceResidualMax))
    throw InputError(std::string(who) + ": reference residual " + shortest(ref->residual) +
                     " exceeds " + shortest(kReferenceResidualMax));
  if (trace.points.empty()) throw InputError(std::string(who) + ": empty trace");
  const double d = distance(trace.points.front(), ref->point);
  return d * d;
}

void require_nu(double nu, const char* who) {
  if (!(nu > 0.0)) throw InputError(std::string(who) + ": nu must be > 0");
}

void require_consistent(const IterationTrace& trace, const char* who) {
  if (trace.points.size() != trace.residual_sq.size() + 1)
    throw InputError(std::string(who) + ": trace has " + std::to_string(trace.points.size()) +
                     " points for " + std::to_string(trace.residual_sq.size()) + " residuals");
}

}  // namespace

ClaimCheck make_check(std::string claim_id, double worst_residual, double tolerance,
                      std::size_t samples, std::uint64_t seed, std::string context, bool heuristic) {
  ClaimCheck c;
  c.claim_id = std::move(claim_id);
  c.worst_residual = worst_residual;
  c.tolerance = tolerance;
  c.passed = worst_residual <= tolerance;
  c.samples = samples;
  c.seed = seed;
  c.context = std::move(context);
  c.heuristic = heuristic;
  return c;
}

std::size_t VerificationReport::passed_count() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const ClaimCheck& c) { return c.passed; }));
}

std::string build_identifier() { return std::string("pcops ") + PCOPS_VERSION; }

ClaimCheck check_definition(const OperatorExpr& T, double nu, std::size_t pairs, std::uint64_t seed,
                            double radius) {
  if (pairs < 1) throw InputError("check_definition: pairs must be >= 1");
  double worst = kNegInf;
  for_each_pair(T.dim(), pairs, seed, radius, [&](const Vector& x, const Vector& y) {
    const Vector d = x - y;
    const Vector g = d - (T.apply(x) - T.apply(y));  // Gx - Gy
    // ||Tx-Ty||^2 - ||x-y||^2 + nu ||Gx-Gy||^2, rewritten with Tx-Ty = d - g
    // so the large ||x-y||^2 terms cancel analytically.
    const double gg = g.squaredNorm();
    const double r = gg - 2.0 * g.dot(d) + weighted(nu, gg);
    worst = std::max(worst, r);
  });
  return make_check(claim::kDefinition, worst, kDefinitionTol, pairs, seed,
                    T.describe() + " " + nu_text(nu));
}

std::optional<double> estimate_nu(const OperatorExpr& T, std::size_t pairs, std::uint64_t seed,
                                  double radius) {
  if (pairs < 1) throw InputError("estimate_nu: pairs must be >= 1");
  std::optional<double> best;
  for_each_pair(T.dim(), pairs, seed, radius, [&](const Vector& x, const Vector& y) {
    const Vector d = x - y;
    const Vector g = d - (T.apply(x) - T.apply(y));
    const double gn = g.norm();
    if (gn < kSkipNorm) return;
    // (||d||^2 - ||d - g||^2) / ||g||^2 = 2 <g, d> / ||g||^2 - 1
    const double ratio = 2.0 * g.dot(d) / (gn * gn) - 1.0;
    best = best ? std::min(*best, ratio) : ratio;
  });
  return best;
}

ClaimCheck check_nu_estimate(const OperatorExpr& T, std::size_t pairs, std::uint64_t seed,
                             double radius) {
  const Certificate& cert = T.certificate();
  if (!cert.is_averaged_family())
    throw InputError("check_nu_estimate: " + cert.describe() + " carries no nu");
  const double certified = cert.nu();
  const auto est = estimate_nu(T, pairs, seed, radius);
  std::string ctx = T.describe() + " certified " + nu_text(certified);
  if (!est) return make_check(claim::kNuEstimate, 0.0, kNuEstimateSlack, pairs, seed,
                              ctx + ", all pairs had G x = G y");
  const double worst = certified - *est;
  return make_check(claim::kNuEstimate, worst, kNuEstimateSlack, pairs, seed,
                    ctx + ", empirical nu=" + shortest(*est));
}

ClaimCheck check_nonexpansive(const OperatorExpr& T, std::size_t pairs, std::uint64_t seed,
                              double radius) {
  if (pairs < 1) throw InputError("check_nonexpansive: pairs must be >= 1");
  double worst = kNegInf;
  for_each_pair(T.dim(), pairs, seed, radius, [&](const Vector& x, const Vector& y) {
    worst = std::max(worst, (T.apply(x) - T.apply(y)).norm() - (x - y).norm());
  });
  return make_check(claim::kNonexpansive, worst, kDefinitionTol, pairs, seed, T.describe());
}

ClaimCheck check_inverse_strongly_monotone(const OperatorExpr& T, double sigma, std::size_t pairs,
                                           std::uint64_t seed, double radius) {
  if (pairs < 1) throw InputError("check_inverse_strongly_monotone: pairs must be >= 1");
  double worst = kNegInf;
  for_each_pair(T.dim(), pairs, seed, radius, [&](const Vector& x, const Vector& y) {
    const Vector e = T.apply(x) - T.apply(y);
    worst = std::max(worst, sigma * e.squaredNorm() - e.dot(x - y));
  });
  return make_check(claim::kInverseStronglyMonotone, worst, kDefinitionTol, pairs, seed,
                    T.describe() + " sigma=" + shortest(sigma));
}

ClaimCheck check_monotone_decrease(const IterationTrace& trace, double nu) {
  require_consistent(trace, "check_monotone_decrease");
  if (trace.iterations() < 2)
    throw InputError("check_monotone_decrease: trace needs >= 2 residual entries");
  require_nu(nu, "check_monotone_decrease");
  double worst = kNegInf;
  Vector g0 = trace.displacement(0);
  const double tol = kMonotoneDecreaseRelTol * (1.0 + g0.squaredNorm());
  for (std::size_t k = 0; k + 1 < trace.iterations(); ++k) {
    Vector g1 = trace.displacement(k + 1);
    const double r = g1.squaredNorm() - g0.squaredNorm() + weighted(nu, (g0 - g1).squaredNorm());
    worst = std::max(worst, r);
    g0 = std::move(g1);
  }
  return make_check(claim::kMonotoneDecrease, worst, tol, trace.iterations() - 1, trace.seed,
                    trace.method + " " + nu_text(nu));
}

ClaimCheck check_rate_bound(const IterationTrace& trace, double nu,
                            const std::optional<FixedPointRef>& ref) {
  require_nu(nu, "check_rate_bound");
  require_consistent(trace, "check_rate_bound");
  const double d0 = initial_distance_sq(trace, ref, "check_rate_bound");
  double worst = kNegInf;
  for (std::size_t k = 0; k < trace.iterations(); ++k) {
    const double bound = d0 / (static_cast<double>(k + 1) * nu);
    worst = std::max(worst, trace.residual_sq[k] - bound);
  }
  return make_check(claim::kRateBound, worst, kRateBoundTol, trace.iterations(), trace.seed,
                    trace.method + " " + nu_text(nu) + " ||x0-x*||^2=" + shortest(d0) +
                        " ref_residual=" + shortest(ref->residual));
}

SmallOCheck check_small_o_trend(const IterationTrace& trace, double nu,
                                const std::optional<FixedPointRef>& ref) {
  require_nu(nu, "check_small_o_trend");
  require_consistent(trace, "check_small_o_trend");
  if (trace.iterations() < kSmallOMinLength)
    throw InputError("check_small_o_trend: trace needs >= 100 residual entries, has " +
                     std::to_string(trace.iterations()));
  const double d0 = initial_distance_sq(trace, ref, "check_small_o_trend");
  auto scaled = [&](std::size_t k) {
    return weighted(nu * static_cast<double>(k + 1), trace.residual_sq[k]);
  };

  double worst = kNegInf;
  for (std::size_t k = 0; k < trace.iterations(); ++k) worst = std::max(worst, scaled(k));
  const std::string ctx = trace.method + " " + nu_text(nu) + " ||x0-x*||^2=" + shortest(d0);
  SmallOCheck out{make_check(claim::kSmallOHardBound, worst - 2.0 * d0, kHardBoundTol,
                             trace.iterations(), trace.seed, ctx),
                  std::nullopt};

  const std::size_t horizon = std::max(trace.requested, trace.iterations());
  if (horizon < kTrendMinLength) return out;
  const std::size_t k_hi = horizon - 1;
  const std::size_t k_lo = k_hi / 100;
  // A run that stopped on an exact fixed point stays there: later terms are 0.
  const bool exact_stop = trace.residual_sq.back() == 0.0;
  auto value_at = [&](std::size_t k) -> std::optional<double> {
    if (k < trace.iterations()) return scaled(k);
    if (exact_stop) return 0.0;
    return std::nullopt;
  };
  const auto hi = value_at(k_hi);
  const auto lo = value_at(k_lo);
  if (!hi || !lo) return out;
  out.trend = make_check(claim::kSmallOTrend, *hi - kTrendFactor * *lo, 0.0, 2, trace.seed,
                         ctx + " v(" + std::to_string(k_hi) + ")=" + shortest(*hi) + " v(" +
                             std::to_string(k_lo) + ")=" + shortest(*lo),
                         true);
  return out;
}

ClaimCheck check_prox_inclusion(const ProxableFn& f, double lambda, Index dim, std::size_t samples,
                                std::uint64_t seed, double radius) {
  if (samples < 1) throw InputError("check_prox_inclusion: samples must be >= 1");
  const OperatorExpr P = prox_operator(f, lambda, dim);
  GaussianSampler sampler(dim, seed, radius);
  double worst = kNegInf;
  for (std::size_t i = 0; i < samples; ++i) {
    Vector x = sampler.next();
    if (i == 0) x.setZero();
    const Vector xp = P.apply(x);
    worst = std::max(worst, subgradient_violation(f, xp, (x - xp) / lambda));
  }
  return make_check(claim::kProxInclusion, worst, kSubgradientTol, samples, seed,
                    P.describe());
}

}  // namespace pcops
