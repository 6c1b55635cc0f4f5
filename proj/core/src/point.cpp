#include "pcops/point.hpp"

#include <string>

#include "pcops/errors.hpp"

namespace pcops {

Point::Point(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw DimError("point must have dimension >= 1");
  require_finite(coords_, "point");
}

Point::Point(std::initializer_list<double> coords)
    : Point(Vector(Eigen::Map<const Vector>(coords.begin(), static_cast<Index>(coords.size())))) {}

Point Point::zeros(Index dim) {
  if (dim < 1) throw DimError("point must have dimension >= 1");
  return Point(Vector::Zero(dim));
}

double distance(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw DimError("distance: dimension mismatch");
  return (a.coords() - b.coords()).norm();
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw NumericError(std::string(what) + " has a non-finite entry");
}

}  // namespace pcops
