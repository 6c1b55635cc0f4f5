#pragma once

#include <initializer_list>

#include <Eigen/Core>

namespace pcops {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A finite point of R^n, n >= 1. Construction rejects empty and non-finite
/// coordinate vectors, so every Point in circulation is usable as an iterate.
class Point {
 public:
  explicit Point(Vector coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(Index dim);

  const Vector& coords() const noexcept { return coords_; }
  Index dim() const noexcept { return coords_.size(); }
  double operator[](Index i) const { return coords_[i]; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }

 private:
  Vector coords_;
};

double distance(const Point& a, const Point& b);

/// Throws NumericError naming `what` if `v` holds a NaN or infinity.
void require_finite(const Vector& v, const char* what);

}  // namespace pcops
