#pragma once

#include <string>
#include <variant>

#include "pcops/operator_expr.hpp"
#include "pcops/point.hpp"

namespace pcops {

/// Closed convex sets with closed-form projections.
class ConvexSet {
 public:
  struct Box {
    Vector lo, hi;
  };
  /// { z : a^T z <= b }
  struct Halfspace {
    Vector a;
    double b;
  };
  struct Ball {
    Vector center;
    double radius;
  };
  /// { z : a^T z = b }
  struct Hyperplane {
    Vector a;
    double b;
  };

  static ConvexSet box(Vector lo, Vector hi);
  static ConvexSet halfspace(Vector a, double b);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet hyperplane(Vector a, double b);

  Index dim() const noexcept { return dim_; }
  const std::variant<Box, Halfspace, Ball, Hyperplane>& shape() const noexcept { return shape_; }
  std::string kind_name() const;

  /// Euclidean projection; `x` must have length dim().
  Vector project(const Vector& x) const;

  /// Constraint violation of z (0 when z is in the set).
  double infeasibility(const Vector& z) const;
  bool contains(const Vector& z, double tol = 1e-10) const { return infeasibility(z) <= tol; }

  /// Distance from g to the normal cone N(z) plus infeasibility of z. Zero
  /// exactly when g is a subgradient of the indicator at a feasible z, up to
  /// the activity tolerance used to decide which constraints bind.
  double normal_cone_violation(const Vector& z, const Vector& g) const;

 private:
  template <class S>
  ConvexSet(S s, Index dim) : shape_(std::move(s)), dim_(dim) {}

  std::variant<Box, Halfspace, Ball, Hyperplane> shape_;
  Index dim_;
};

Point project(const ConvexSet& set, const Point& x);

/// P_C as a certified atom: Pseudocontractive(1).
OperatorExpr projection(const ConvexSet& set);

}  // namespace pcops
