#include "pcops/methods.hpp"

#include <cmath>

#include "format.hpp"
#include "pcops/errors.hpp"

namespace pcops {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using detail::shortest;

void check_omega(double omega) {
  if (!(omega > 0.0 && omega < 2.0))
    throw ParamError("omega must lie in the open interval (0, 2), got " + shortest(omega));
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ParamError("lambda must lie in the open interval (0, inf), got " + shortest(lambda));
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParamError("alpha must lie in the open interval (0, 1), got " + shortest(alpha));
}

void check_same_dim(Index a, Index b, const char* what) {
  if (a != b)
    throw DimError(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                   std::to_string(b) + " differ");
}

OperatorExpr relaxed(std::optional<double> omega, const OperatorExpr& inner) {
  if (!omega) return inner;
  check_omega(*omega);
  return OperatorExpr::relax(*omega, inner);
}

OperatorExpr reflection_product(const ProxableFn& f, const ProxableFn& g, double lambda, Index dim) {
  check_lambda(lambda);
  const OperatorExpr rf = OperatorExpr::reflect(prox_operator(f, lambda, dim));
  const OperatorExpr rg = OperatorExpr::reflect(prox_operator(g, lambda, dim));
  return OperatorExpr::compose(rg, rf);
}

}  // namespace

OperatorExpr build(const MethodSpec& spec) {
  return std::visit(
      overloaded{
          [](const method::Identity& m) { return OperatorExpr::identity(m.dim); },
          [](const method::GradientDescent& m) { return gradient_step(m.f, m.gamma); },
          [](const method::RelaxedProjection& m) {
            check_omega(m.omega);
            return OperatorExpr::relax(m.omega, projection(m.set));
          },
          [](const method::AlternatingProjections& m) {
            check_same_dim(m.first.dim(), m.second.dim(), "alternating_projections");
            return OperatorExpr::compose(projection(m.first), projection(m.second));
          },
          [](const method::ProjectedGD& m) {
            check_same_dim(m.set.dim(), m.f.dim(), "projected_gd");
            OperatorExpr step = gradient_step(m.f, m.gamma);
            return OperatorExpr::compose(relaxed(m.omega, projection(m.set)), step);
          },
          [](const method::ProximalPoint& m) {
            check_lambda(m.lambda);
            return prox_operator(m.g, m.lambda, m.dim);
          },
          [](const method::RelaxedProx& m) {
            check_lambda(m.lambda);
            check_omega(m.omega);
            return OperatorExpr::relax(m.omega, prox_operator(m.g, m.lambda, m.dim));
          },
          [](const method::ForwardBackward& m) {
            check_lambda(m.lambda);
            OperatorExpr step = gradient_step(m.f, m.gamma);
            return OperatorExpr::compose(relaxed(m.omega, prox_operator(m.g, m.lambda, m.f.dim())),
                                         step);
          },
          [](const method::Admm& m) {
            const OperatorExpr rr = reflection_product(m.f, m.g, m.lambda, m.dim);
            return OperatorExpr::convex_combine(0.5, OperatorExpr::identity(m.dim), rr);
          },
          [](const method::GeneralizedAdmm& m) {
            check_alpha(m.alpha);
            const OperatorExpr rr = reflection_product(m.f, m.g, m.lambda, m.dim);
            return OperatorExpr::convex_combine(m.alpha, OperatorExpr::identity(m.dim), rr);
          }},
      spec);
}

std::string describe(const MethodSpec& spec) {
  auto opt = [](std::optional<double> w) { return w ? ", omega=" + shortest(*w) : std::string(); };
  return std::visit(
      overloaded{
          [](const method::Identity& m) { return "identity(dim=" + std::to_string(m.dim) + ")"; },
          [](const method::GradientDescent& m) {
            return "gradient_descent(gamma=" + shortest(m.gamma) + ", L=" + shortest(m.f.lipschitz()) +
                   ")";
          },
          [](const method::RelaxedProjection& m) {
            return "relaxed_projection(" + m.set.kind_name() + ", omega=" + shortest(m.omega) + ")";
          },
          [](const method::AlternatingProjections& m) {
            return "alternating_projections(" + m.first.kind_name() + ", " + m.second.kind_name() + ")";
          },
          [&](const method::ProjectedGD& m) {
            return "projected_gd(" + m.set.kind_name() + ", gamma=" + shortest(m.gamma) +
                   ", L=" + shortest(m.f.lipschitz()) + opt(m.omega) + ")";
          },
          [](const method::ProximalPoint& m) {
            return "proximal_point(" + m.g.kind_name() + ", lambda=" + shortest(m.lambda) + ")";
          },
          [](const method::RelaxedProx& m) {
            return "relaxed_prox(" + m.g.kind_name() + ", lambda=" + shortest(m.lambda) +
                   ", omega=" + shortest(m.omega) + ")";
          },
          [&](const method::ForwardBackward& m) {
            return "forward_backward(" + m.g.kind_name() + ", gamma=" + shortest(m.gamma) +
                   ", L=" + shortest(m.f.lipschitz()) + ", lambda=" + shortest(m.lambda) +
                   opt(m.omega) + ")";
          },
          [](const method::Admm& m) {
            return "admm(" + m.f.kind_name() + ", " + m.g.kind_name() + ", lambda=" +
                   shortest(m.lambda) + ")";
          },
          [](const method::GeneralizedAdmm& m) {
            return "generalized_admm(" + m.f.kind_name() + ", " + m.g.kind_name() + ", lambda=" +
                   shortest(m.lambda) + ", alpha=" + shortest(m.alpha) + ")";
          }},
      spec);
}

std::optional<double> closed_form_nu(const MethodSpec& spec) {
  return std::visit(
      overloaded{
          [](const method::Identity&) -> std::optional<double> { return std::nullopt; },
          [](const method::GradientDescent& m) -> std::optional<double> {
            return 2.0 / (m.gamma * m.f.lipschitz()) - 1.0;
          },
          [](const method::RelaxedProjection& m) -> std::optional<double> {
            return (2.0 - m.omega) / m.omega;
          },
          [](const method::AlternatingProjections&) -> std::optional<double> { return 0.5; },
          [](const method::ProjectedGD& m) -> std::optional<double> {
            if (m.omega) return std::nullopt;
            return 1.0 - m.gamma * m.f.lipschitz() / 2.0;
          },
          [](const method::ProximalPoint&) -> std::optional<double> { return 1.0; },
          [](const method::RelaxedProx& m) -> std::optional<double> {
            return (2.0 - m.omega) / m.omega;
          },
          [](const method::ForwardBackward& m) -> std::optional<double> {
            if (m.omega) return std::nullopt;
            return 1.0 - m.gamma * m.f.lipschitz() / 2.0;
          },
          [](const method::Admm&) -> std::optional<double> { return 1.0; },
          [](const method::GeneralizedAdmm& m) -> std::optional<double> {
            return (1.0 - m.alpha) / m.alpha;
          }},
      spec);
}

Point admm_primal(const method::Admm& spec, const Point& z) { return prox(spec.f, spec.lambda, z); }

}  // namespace pcops
