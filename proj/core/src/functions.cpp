#include "pcops/functions.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

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

constexpr double kSymmetryTol = 1e-10;
constexpr Index kMaxDenseDim = 2000;

void validate_psd(const Matrix& A, const Vector& b, const char* what) {
  if (A.rows() != A.cols()) throw DimError(std::string(what) + ": matrix must be square");
  if (A.rows() != b.size()) throw DimError(std::string(what) + ": A and b differ in dimension");
  if (A.rows() < 1) throw DimError(std::string(what) + ": dimension must be >= 1");
  if (A.rows() > kMaxDenseDim)
    throw ParamError(std::string(what) + ": dense matrices are limited to n <= 2000");
  require_finite(A.reshaped(), what);
  require_finite(b, what);
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale)
    throw ParamError(std::string(what) + ": matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kSymmetryTol * scale)
    throw ParamError(std::string(what) + ": matrix is not positive semidefinite");
}

}  // namespace

double power_iteration_lambda_max(const Matrix& A, double tol, int max_iter) {
  if (A.rows() != A.cols() || A.rows() < 1) throw DimError("power iteration needs a square matrix");
  // Deterministic start with no special alignment to coordinate axes.
  Vector v(A.rows());
  for (Index i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i % 7);
  v.normalize();
  double rq = v.dot(A * v);
  for (int it = 0; it < max_iter; ++it) {
    Vector w = A * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    const double next = v.dot(A * v);
    if (std::abs(next - rq) <= tol * std::max(1.0, std::abs(next))) return next;
    rq = next;
  }
  return rq;
}

SmoothConvexFn SmoothConvexFn::quadratic(Matrix A, Vector b, double lipschitz) {
  validate_psd(A, b, "quadratic");
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz))
    throw ParamError("Lipschitz constant L must be positive, got " + detail::shortest(lipschitz));
  const double lmax = power_iteration_lambda_max(A);
  if (lipschitz < lmax * (1.0 - 1e-8))
    throw ParamError("Lipschitz constant L=" + detail::shortest(lipschitz) +
                     " is below lambda_max(A)=" + detail::shortest(lmax));
  return SmoothConvexFn(std::move(A), std::move(b), lipschitz);
}

std::optional<Point> SmoothConvexFn::minimizer() const {
  Eigen::LLT<Matrix> llt(A_);
  if (llt.info() != Eigen::Success) return std::nullopt;
  Vector x = llt.solve(b_);
  if (!x.allFinite()) return std::nullopt;
  return Point(std::move(x));
}

OperatorExpr normalized_gradient(const SmoothConvexFn& f) {
  const double inv_l = 1.0 / f.lipschitz();
  return OperatorExpr::atom(
      "grad/L", f.dim(), [f, inv_l](const Vector& x) -> Vector { return inv_l * f.gradient(x); },
      Certificate::inverse_strongly_monotone(1.0));
}

OperatorExpr gradient_step(const SmoothConvexFn& f, double gamma) {
  const double L = f.lipschitz();
  if (!(gamma > 0.0 && gamma < 2.0 / L))
    throw ParamError("gamma must lie in the open interval (0, 2/L) = (0, " +
                     detail::shortest(2.0 / L) + "), got " + detail::shortest(gamma));
  OperatorExpr step =
      OperatorExpr::displacement(OperatorExpr::scale(gamma * L, normalized_gradient(f)));
  if (!step.certificate().is_averaged_family())
    throw ParamError("gamma=" + detail::shortest(gamma) +
                     " is numerically indistinguishable from 2/L; open interval (0, 2/L)");
  return step;
}

ProxableFn ProxableFn::l1(double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight))
    throw ParamError("l1 weight must be >= 0, got " + detail::shortest(weight));
  return ProxableFn(L1{weight});
}

ProxableFn ProxableFn::half_norm_sq() { return ProxableFn(HalfNormSq{}); }

ProxableFn ProxableFn::indicator(ConvexSet set) { return ProxableFn(Indicator{std::move(set)}); }

ProxableFn ProxableFn::quadratic(Matrix A, Vector b) {
  validate_psd(A, b, "quadratic");
  return ProxableFn(Quadratic{std::move(A), std::move(b)});
}

std::string ProxableFn::kind_name() const {
  return std::visit(overloaded{[](const L1&) { return std::string("l1"); },
                               [](const HalfNormSq&) { return std::string("half_norm_sq"); },
                               [](const Indicator& k) { return "indicator[" + k.set.kind_name() + "]"; },
                               [](const Quadratic&) { return std::string("quadratic"); }},
                    kind_);
}

std::optional<Index> ProxableFn::dim() const {
  return std::visit(overloaded{[](const L1&) -> std::optional<Index> { return std::nullopt; },
                               [](const HalfNormSq&) -> std::optional<Index> { return std::nullopt; },
                               [](const Indicator& k) -> std::optional<Index> { return k.set.dim(); },
                               [](const Quadratic& k) -> std::optional<Index> { return k.b.size(); }},
                    kind_);
}

double ProxableFn::value(const Vector& z) const {
  return std::visit(
      overloaded{[&](const L1& k) { return k.weight * z.lpNorm<1>(); },
                 [&](const HalfNormSq&) { return 0.5 * z.squaredNorm(); },
                 [&](const Indicator& k) {
                   return k.set.contains(z) ? 0.0 : std::numeric_limits<double>::infinity();
                 },
                 [&](const Quadratic& k) { return 0.5 * z.dot(k.A * z) - k.b.dot(z); }},
      kind_);
}

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ParamError("lambda must be > 0, got " + detail::shortest(lambda));
}

OperatorExpr::EvalFn make_prox_fn(const ProxableFn& f, double lambda, Index dim) {
  return std::visit(
      overloaded{
          [&](const ProxableFn::L1& k) -> OperatorExpr::EvalFn {
            const double thr = lambda * k.weight;
            return [thr](const Vector& x) -> Vector {
              return x.array().sign() * (x.array().abs() - thr).max(0.0);
            };
          },
          [&](const ProxableFn::HalfNormSq&) -> OperatorExpr::EvalFn {
            const double s = 1.0 / (1.0 + lambda);
            return [s](const Vector& x) -> Vector { return s * x; };
          },
          [&](const ProxableFn::Indicator& k) -> OperatorExpr::EvalFn {
            return [set = k.set](const Vector& x) { return set.project(x); };
          },
          [&](const ProxableFn::Quadratic& k) -> OperatorExpr::EvalFn {
            Matrix M = Matrix::Identity(dim, dim) + lambda * k.A;
            auto llt = std::make_shared<const Eigen::LLT<Matrix>>(M);
            if (llt->info() != Eigen::Success) throw NumericError("prox: I + lambda A not factorizable");
            Vector rhs_shift = lambda * k.b;
            return [llt, rhs_shift](const Vector& x) -> Vector { return llt->solve(x + rhs_shift); };
          }},
      f.kind());
}

}  // namespace

OperatorExpr prox_operator(const ProxableFn& f, double lambda, Index dim) {
  require_lambda(lambda);
  if (dim < 1) throw DimError("prox: dimension must be >= 1");
  if (auto d = f.dim(); d && *d != dim)
    throw DimError("prox: function has dimension " + std::to_string(*d) + ", requested " +
                   std::to_string(dim));
  return OperatorExpr::atom("prox[" + f.kind_name() + "," + detail::shortest(lambda) + "]", dim,
                            make_prox_fn(f, lambda, dim), Certificate::firmly_nonexpansive());
}

Point prox(const ProxableFn& f, double lambda, const Point& x) {
  return evaluate(prox_operator(f, lambda, x.dim()), x);
}

double subgradient_violation(const ProxableFn& f, const Vector& z, const Vector& g) {
  if (z.size() != g.size()) throw DimError("subgradient: z and g differ in dimension");
  if (auto d = f.dim(); d && *d != z.size()) throw DimError("subgradient: dimension mismatch");
  return std::visit(
      overloaded{[&](const ProxableFn::L1& k) {
                   double worst = 0.0;
                   for (Index i = 0; i < z.size(); ++i) {
                     const double v = z[i] == 0.0 ? std::max(0.0, std::abs(g[i]) - k.weight)
                                                  : std::abs(g[i] - (z[i] > 0 ? k.weight : -k.weight));
                     worst = std::max(worst, v);
                   }
                   return worst;
                 },
                 [&](const ProxableFn::HalfNormSq&) { return (g - z).norm(); },
                 [&](const ProxableFn::Indicator& k) { return k.set.normal_cone_violation(z, g); },
                 [&](const ProxableFn::Quadratic& k) { return (g - (k.A * z - k.b)).norm(); }},
      f.kind());
}

bool subgradient_check(const ProxableFn& f, const Point& z, const Point& g) {
  try {
    return subgradient_violation(f, z.coords(), g.coords()) <= kSubgradientTol;
  } catch (const DimError&) {
    return false;
  }
}

}  // namespace pcops
