#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcops/functions.hpp"
#include "pcops/iteration.hpp"
#include "pcops/operator_expr.hpp"
#include "pcops/sampling.hpp"

namespace pcops {

namespace claim {
inline constexpr const char* kDefinition = "definition";
inline constexpr const char* kNuEstimate = "nu-estimate";
inline constexpr const char* kNonexpansive = "nonexpansive";
inline constexpr const char* kInverseStronglyMonotone = "inverse-strongly-monotone";
inline constexpr const char* kMonotoneDecrease = "monotone-decrease";
inline constexpr const char* kRateBound = "rate-bound";
inline constexpr const char* kSmallOHardBound = "small-o-hard-bound";
inline constexpr const char* kSmallOTrend = "small-o-trend";
inline constexpr const char* kProxInclusion = "prox-inclusion";
}  // namespace claim

inline constexpr double kDefinitionTol = 1e-9;
inline constexpr double kNuEstimateSlack = 1e-6;
inline constexpr double kMonotoneDecreaseRelTol = 1e-10;
inline constexpr double kRateBoundTol = 1e-10;
inline constexpr double kHardBoundTol = 1e-9;
inline constexpr double kTrendFactor = 0.1;
inline constexpr std::size_t kTrendMinLength = 10'000;
inline constexpr std::size_t kSmallOMinLength = 100;
/// Fixed-point references used for rate checks must be at least this exact.
inline constexpr double kReferenceResidualMax = 1e-10;

/// One verified claim. passed == (worst_residual <= tolerance).
struct ClaimCheck {
  std::string claim_id;
  bool passed = false;
  double worst_residual = 0.0;
  std::size_t samples = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::string context;
  /// Calibrated heuristic rather than a proved inequality.
  bool heuristic = false;
};

ClaimCheck make_check(std::string claim_id, double worst_residual, double tolerance,
                      std::size_t samples, std::uint64_t seed, std::string context,
                      bool heuristic = false);

struct VerificationReport {
  std::vector<ClaimCheck> checks;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string build_id;

  std::size_t passed_count() const;
  std::size_t failed_count() const { return checks.size() - passed_count(); }
  bool all_passed() const { return passed_count() == checks.size(); }
};

/// Build identifier embedded in reports ("pcops <version>").
std::string build_identifier();

/// max over sampled pairs of ||Tx-Ty||^2 - ||x-y||^2 + nu ||Gx-Gy||^2;
/// passes when <= 1e-9.
ClaimCheck check_definition(const OperatorExpr& T, double nu, std::size_t pairs, std::uint64_t seed,
                            double radius = kDefaultSampleRadius);

/// inf over sampled pairs of (||x-y||^2 - ||Tx-Ty||^2) / ||Gx-Gy||^2,
/// skipping pairs with ||Gx-Gy|| < 1e-12. Empty when every pair is skipped.
std::optional<double> estimate_nu(const OperatorExpr& T, std::size_t pairs, std::uint64_t seed,
                                  double radius = kDefaultSampleRadius);

/// Passes when the empirical modulus is not below the certified nu by more
/// than 1e-6 (a certificate may be conservative, never over-tight).
ClaimCheck check_nu_estimate(const OperatorExpr& T, std::size_t pairs, std::uint64_t seed,
                             double radius = kDefaultSampleRadius);

/// ||Tx-Ty|| <= ||x-y|| + 1e-9 on sampled pairs.
ClaimCheck check_nonexpansive(const OperatorExpr& T, std::size_t pairs, std::uint64_t seed,
                              double radius = kDefaultSampleRadius);

/// <Tx-Ty, x-y> >= sigma ||Tx-Ty||^2 - 1e-9 on sampled pairs.
ClaimCheck check_inverse_strongly_monotone(const OperatorExpr& T, double sigma, std::size_t pairs,
                                           std::uint64_t seed, double radius = kDefaultSampleRadius);

/// max_k ||Gx^{k+1}||^2 - ||Gx^k||^2 + nu ||Gx^k - Gx^{k+1}||^2 against
/// 1e-10 (1 + ||Gx^0||^2). Needs >= 2 residual entries.
ClaimCheck check_monotone_decrease(const IterationTrace& trace, double nu);

/// residual_sq[k] <= ||x^0 - x*||^2 / ((k + 1) nu) + 1e-10 for every k.
ClaimCheck check_rate_bound(const IterationTrace& trace, double nu,
                            const std::optional<FixedPointRef>& ref);

struct SmallOCheck {
  /// nu (k+1) residual_sq[k] <= 2 ||x^0 - x*||^2 for all k.
  ClaimCheck hard_bound;
  /// nu (k+1) residual_sq[k] at k_hi vs. 1/10 of its value at k_hi / 100.
  /// Present only for runs of at least 10^4 steps.
  std::optional<ClaimCheck> trend;
};

/// Needs a trace of >= 100 residual entries.
SmallOCheck check_small_o_trend(const IterationTrace& trace, double nu,
                                const std::optional<FixedPointRef>& ref);

/// For sampled x, x+ = prox(f, lambda, x) must satisfy (x - x+) / lambda in
/// df(x+); worst_residual is the largest membership violation.
ClaimCheck check_prox_inclusion(const ProxableFn& f, double lambda, Index dim, std::size_t samples,
                                std::uint64_t seed, double radius = kDefaultSampleRadius);

}  // namespace pcops
