#pragma once

#include <functional>
#include <memory>
#include <string>

#include "pcops/certificate.hpp"
#include "pcops/point.hpp"

namespace pcops {

/// Immutable expression tree over certified operator atoms. Every node stores
/// the certificate derived bottom-up from its children at construction time;
/// building an uncertifiable node (e.g. reflecting a merely nonexpansive map)
/// throws. Copies share structure and evaluation is thread-safe.
class OperatorExpr {
 public:
  using EvalFn = std::function<Vector(const Vector&)>;

  enum class Kind { Atom, Identity, Compose, ConvexCombine, Relax, Reflect, Displacement, Scale };

  /// `fn` must be pure; it receives and returns vectors of length `dim`.
  static OperatorExpr atom(std::string id, Index dim, EvalFn fn, Certificate cert);
  static OperatorExpr identity(Index dim);
  /// outer(inner(x)).
  static OperatorExpr compose(const OperatorExpr& outer, const OperatorExpr& inner);
  /// (1 - t) left(x) + t right(x).
  static OperatorExpr convex_combine(double t, const OperatorExpr& left, const OperatorExpr& right);
  /// (1 - omega) x + omega inner(x).
  static OperatorExpr relax(double omega, const OperatorExpr& inner);
  /// 2 inner(x) - x.
  static OperatorExpr reflect(const OperatorExpr& inner);
  /// x - inner(x).
  static OperatorExpr displacement(const OperatorExpr& inner);
  /// gamma inner(x); inner must be certified inverse strongly monotone.
  static OperatorExpr scale(double gamma, const OperatorExpr& inner);

  Kind kind() const noexcept;
  Index dim() const noexcept;
  const Certificate& certificate() const noexcept;
  /// t, omega or gamma for the parameterised nodes; 0 otherwise.
  double parameter() const noexcept;
  /// Atom id, or empty.
  const std::string& id() const noexcept;
  /// Children: first() is the left / outer / only child.
  const OperatorExpr* first() const noexcept;
  const OperatorExpr* second() const noexcept;

  /// Compact one-line rendering, e.g. "compose(P[ball], I-0.5*grad)".
  std::string describe() const;

  /// Unchecked evaluation on a raw vector. Throws NumericError if any node
  /// produces a non-finite value; sizes are assumed to match.
  Vector apply(const Vector& x) const;

 private:
  struct Node;
  explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// T(x) with dimension and finiteness checks.
Point evaluate(const OperatorExpr& expr, const Point& x);

}  // namespace pcops
