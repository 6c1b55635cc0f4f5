#pragma once

#include <optional>
#include <string>
#include <variant>

#include "pcops/convex_set.hpp"
#include "pcops/functions.hpp"
#include "pcops/operator_expr.hpp"

namespace pcops {

inline constexpr double kDefaultLambda = 1.0;
inline constexpr double kDefaultOmega = 1.5;

namespace method {

struct Identity {
  Index dim;
};
struct GradientDescent {
  SmoothConvexFn f;
  double gamma;
};
struct RelaxedProjection {
  ConvexSet set;
  double omega = kDefaultOmega;
};
/// P_first o P_second.
struct AlternatingProjections {
  ConvexSet first;
  ConvexSet second;
};
/// P_set o (I - gamma grad f), or relax(omega, P_set) o (I - gamma grad f).
struct ProjectedGD {
  ConvexSet set;
  SmoothConvexFn f;
  double gamma;
  std::optional<double> omega;
};
struct ProximalPoint {
  ProxableFn g;
  double lambda = kDefaultLambda;
  Index dim;
};
struct RelaxedProx {
  ProxableFn g;
  double lambda = kDefaultLambda;
  double omega = kDefaultOmega;
  Index dim;
};
/// prox_{g,lambda} o (I - gamma grad f), prox optionally relaxed.
struct ForwardBackward {
  SmoothConvexFn f;
  ProxableFn g;
  double gamma;
  double lambda = kDefaultLambda;
  std::optional<double> omega;
};
/// Operator form on the z-variable: 1/2 I + 1/2 R_g R_f. The primal estimate
/// is prox_{f,lambda}(z).
struct Admm {
  ProxableFn f;
  ProxableFn g;
  double lambda = kDefaultLambda;
  Index dim;
};
/// (1 - alpha) I + alpha R_g R_f, alpha in (0, 1).
struct GeneralizedAdmm {
  ProxableFn f;
  ProxableFn g;
  double lambda = kDefaultLambda;
  double alpha;
  Index dim;
};

}  // namespace method

using MethodSpec =
    std::variant<method::Identity, method::GradientDescent, method::RelaxedProjection,
                 method::AlternatingProjections, method::ProjectedGD, method::ProximalPoint,
                 method::RelaxedProx, method::ForwardBackward, method::Admm,
                 method::GeneralizedAdmm>;

/// Validates every parameter window and returns the certified iteration
/// operator. Violations throw ParamError naming the window.
OperatorExpr build(const MethodSpec& spec);

/// Method name and parameters, e.g. "gradient_descent(gamma=0.5, L=2)".
std::string describe(const MethodSpec& spec);

/// Closed-form nu quoted for the method family, independent of the
/// certificate algebra; empty where no closed form applies (relaxed
/// projected GD / relaxed FBS).
std::optional<double> closed_form_nu(const MethodSpec& spec);

/// Primal estimate from an ADMM z-iterate: prox_{f,lambda}(z).
Point admm_primal(const method::Admm& spec, const Point& z);

/// Step 1/L, the default for every gradient-based method.
inline double default_gamma(const SmoothConvexFn& f) { return 1.0 / f.lipschitz(); }

}  // namespace pcops
