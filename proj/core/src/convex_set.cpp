#include "pcops/convex_set.hpp"

#include <algorithm>
#include <cmath>

#include "pcops/errors.hpp"

namespace pcops {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// A constraint is treated as binding when within this (scaled) margin.
constexpr double kActiveTol = 1e-8;

void require_finite_data(const Vector& v, const char* what) {
  if (v.size() < 1) throw DimError(std::string(what) + " must have dimension >= 1");
  require_finite(v, what);
}

}  // namespace

ConvexSet ConvexSet::box(Vector lo, Vector hi) {
  require_finite_data(lo, "box lower bound");
  require_finite_data(hi, "box upper bound");
  if (lo.size() != hi.size()) throw DimError("box bounds differ in dimension");
  if ((lo.array() > hi.array()).any()) throw ParamError("box requires lo <= hi coordinatewise");
  const Index n = lo.size();
  return ConvexSet(Box{std::move(lo), std::move(hi)}, n);
}

ConvexSet ConvexSet::halfspace(Vector a, double b) {
  require_finite_data(a, "halfspace normal");
  if (a.squaredNorm() == 0.0) throw ParamError("halfspace normal must be nonzero");
  if (!std::isfinite(b)) throw NumericError("halfspace offset must be finite");
  const Index n = a.size();
  return ConvexSet(Halfspace{std::move(a), b}, n);
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  require_finite_data(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParamError("ball radius must be positive");
  const Index n = center.size();
  return ConvexSet(Ball{std::move(center), radius}, n);
}

ConvexSet ConvexSet::hyperplane(Vector a, double b) {
  require_finite_data(a, "hyperplane normal");
  if (a.squaredNorm() == 0.0) throw ParamError("hyperplane normal must be nonzero");
  if (!std::isfinite(b)) throw NumericError("hyperplane offset must be finite");
  const Index n = a.size();
  return ConvexSet(Hyperplane{std::move(a), b}, n);
}

std::string ConvexSet::kind_name() const {
  return std::visit(overloaded{[](const Box&) { return "box"; },
                               [](const Halfspace&) { return "halfspace"; },
                               [](const Ball&) { return "ball"; },
                               [](const Hyperplane&) { return "hyperplane"; }},
                    shape_);
}

Vector ConvexSet::project(const Vector& x) const {
  return std::visit(
      overloaded{
          [&](const Box& s) -> Vector { return x.cwiseMax(s.lo).cwiseMin(s.hi); },
          [&](const Halfspace& s) -> Vector {
            const double excess = s.a.dot(x) - s.b;
            if (excess <= 0.0) return x;
            return x - (excess / s.a.squaredNorm()) * s.a;
          },
          [&](const Ball& s) -> Vector {
            const Vector d = x - s.center;
            const double r = d.norm();
            if (r <= s.radius) return x;
            return s.center + (s.radius / r) * d;
          },
          [&](const Hyperplane& s) -> Vector {
            return x - ((s.a.dot(x) - s.b) / s.a.squaredNorm()) * s.a;
          }},
      shape_);
}

double ConvexSet::infeasibility(const Vector& z) const {
  return std::visit(
      overloaded{
          [&](const Box& s) {
            return std::max((s.lo - z).cwiseMax(0.0).maxCoeff(), (z - s.hi).cwiseMax(0.0).maxCoeff());
          },
          [&](const Halfspace& s) { return std::max(0.0, s.a.dot(z) - s.b) / s.a.norm(); },
          [&](const Ball& s) { return std::max(0.0, (z - s.center).norm() - s.radius); },
          [&](const Hyperplane& s) { return std::abs(s.a.dot(z) - s.b) / s.a.norm(); }},
      shape_);
}

double ConvexSet::normal_cone_violation(const Vector& z, const Vector& g) const {
  const double infeas = infeasibility(z);
  const double cone = std::visit(
      overloaded{
          [&](const Box& s) {
            // Per coordinate: N = {0} inside, (-inf, 0] at lo, [0, inf) at hi, R if lo == hi.
            double worst = 0.0;
            for (Index i = 0; i < z.size(); ++i) {
              const double scale = 1.0 + std::abs(s.lo[i]) + std::abs(s.hi[i]);
              const bool at_lo = z[i] - s.lo[i] <= kActiveTol * scale;
              const bool at_hi = s.hi[i] - z[i] <= kActiveTol * scale;
              double v = 0.0;
              if (at_lo && at_hi) v = 0.0;
              else if (at_lo) v = std::max(0.0, g[i]);
              else if (at_hi) v = std::max(0.0, -g[i]);
              else v = std::abs(g[i]);
              worst = std::max(worst, v);
            }
            return worst;
          },
          [&](const Halfspace& s) {
            const double ax = s.a.dot(z);
            const bool active = s.b - ax <= kActiveTol * (1.0 + std::abs(s.b) + s.a.norm() * z.norm());
            if (!active) return g.norm();
            // Project g onto the ray {mu a : mu >= 0}.
            const double mu = std::max(0.0, s.a.dot(g) / s.a.squaredNorm());
            return (g - mu * s.a).norm();
          },
          [&](const Ball& s) {
            const Vector d = z - s.center;
            const double r = d.norm();
            const bool active = s.radius - r <= kActiveTol * (1.0 + s.radius);
            if (!active || r == 0.0) return g.norm();
            const Vector u = d / r;
            const double mu = std::max(0.0, u.dot(g));
            return (g - mu * u).norm();
          },
          [&](const Hyperplane& s) {
            const double mu = s.a.dot(g) / s.a.squaredNorm();
            return (g - mu * s.a).norm();
          }},
      shape_);
  return infeas + cone;
}

Point project(const ConvexSet& set, const Point& x) {
  if (x.dim() != set.dim())
    throw DimError("project: point has dimension " + std::to_string(x.dim()) + ", set " +
                   std::to_string(set.dim()));
  return Point(set.project(x.coords()));
}

OperatorExpr projection(const ConvexSet& set) {
  return OperatorExpr::atom("P[" + set.kind_name() + "]", set.dim(),
                            [set](const Vector& x) { return set.project(x); },
                            Certificate::firmly_nonexpansive());
}

}  // namespace pcops
