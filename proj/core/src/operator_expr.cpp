#include "pcops/operator_expr.hpp"

#include <optional>

#include "format.hpp"
#include "pcops/errors.hpp"

namespace pcops {

struct OperatorExpr::Node {
  Kind kind;
  Index dim;
  Certificate cert;
  double param = 0.0;
  std::string id;
  EvalFn fn;
  std::optional<OperatorExpr> a;
  std::optional<OperatorExpr> b;
};

namespace {

void require_same_dim(const OperatorExpr& x, const OperatorExpr& y, const char* op) {
  if (x.dim() != y.dim())
    throw DimError(std::string(op) + ": operand dimensions " + std::to_string(x.dim()) + " and " +
                   std::to_string(y.dim()) + " differ");
}

Vector checked(Vector v, const std::string& where) {
  if (!v.allFinite()) throw NumericError("non-finite value produced by " + where);
  return v;
}

}  // namespace

OperatorExpr OperatorExpr::atom(std::string id, Index dim, EvalFn fn, Certificate cert) {
  if (dim < 1) throw DimError("atom '" + id + "' must have dimension >= 1");
  if (!fn) throw Error("atom '" + id + "' has no evaluation function");
  return OperatorExpr(std::make_shared<const Node>(
      Node{Kind::Atom, dim, cert, 0.0, std::move(id), std::move(fn), std::nullopt, std::nullopt}));
}

OperatorExpr OperatorExpr::identity(Index dim) {
  if (dim < 1) throw DimError("identity must have dimension >= 1");
  return OperatorExpr(std::make_shared<const Node>(
      Node{Kind::Identity, dim, Certificate::identity(), 0.0, {}, {}, std::nullopt, std::nullopt}));
}

OperatorExpr OperatorExpr::compose(const OperatorExpr& outer, const OperatorExpr& inner) {
  require_same_dim(outer, inner, "compose");
  return OperatorExpr(std::make_shared<const Node>(
      Node{Kind::Compose, outer.dim(), cert_compose(outer.certificate(), inner.certificate()), 0.0,
           {}, {}, outer, inner}));
}

OperatorExpr OperatorExpr::convex_combine(double t, const OperatorExpr& left,
                                          const OperatorExpr& right) {
  require_same_dim(left, right, "convex_combine");
  return OperatorExpr(std::make_shared<const Node>(
      Node{Kind::ConvexCombine, left.dim(), cert_combine(t, left.certificate(), right.certificate()),
           t, {}, {}, left, right}));
}

OperatorExpr OperatorExpr::relax(double omega, const OperatorExpr& inner) {
  return OperatorExpr(std::make_shared<const Node>(Node{
      Kind::Relax, inner.dim(), cert_relax(inner.certificate(), omega), omega, {}, {}, inner,
      std::nullopt}));
}

OperatorExpr OperatorExpr::reflect(const OperatorExpr& inner) {
  return OperatorExpr(std::make_shared<const Node>(Node{
      Kind::Reflect, inner.dim(), cert_reflect(inner.certificate()), 0.0, {}, {}, inner,
      std::nullopt}));
}

OperatorExpr OperatorExpr::displacement(const OperatorExpr& inner) {
  return OperatorExpr(std::make_shared<const Node>(Node{
      Kind::Displacement, inner.dim(), cert_displacement(inner.certificate()), 0.0, {}, {}, inner,
      std::nullopt}));
}

OperatorExpr OperatorExpr::scale(double gamma, const OperatorExpr& inner) {
  return OperatorExpr(std::make_shared<const Node>(Node{
      Kind::Scale, inner.dim(), cert_scale(inner.certificate(), gamma), gamma, {}, {}, inner,
      std::nullopt}));
}

OperatorExpr::Kind OperatorExpr::kind() const noexcept { return node_->kind; }
Index OperatorExpr::dim() const noexcept { return node_->dim; }
const Certificate& OperatorExpr::certificate() const noexcept { return node_->cert; }
double OperatorExpr::parameter() const noexcept { return node_->param; }
const std::string& OperatorExpr::id() const noexcept { return node_->id; }
const OperatorExpr* OperatorExpr::first() const noexcept { return node_->a ? &*node_->a : nullptr; }
const OperatorExpr* OperatorExpr::second() const noexcept { return node_->b ? &*node_->b : nullptr; }

std::string OperatorExpr::describe() const {
  const Node& n = *node_;
  const auto p = detail::shortest(n.param);
  switch (n.kind) {
    case Kind::Atom: return n.id;
    case Kind::Identity: return "I";
    case Kind::Compose: return "compose(" + n.a->describe() + ", " + n.b->describe() + ")";
    case Kind::ConvexCombine:
      return "combine(" + p + "; " + n.a->describe() + ", " + n.b->describe() + ")";
    case Kind::Relax: return "relax(" + p + "; " + n.a->describe() + ")";
    case Kind::Reflect: return "reflect(" + n.a->describe() + ")";
    case Kind::Displacement: return "I-" + n.a->describe();
    case Kind::Scale: return p + "*" + n.a->describe();
  }
  return "?";
}

Vector OperatorExpr::apply(const Vector& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Atom: return checked(n.fn(x), n.id);
    case Kind::Identity: return x;
    case Kind::Compose: return n.a->apply(n.b->apply(x));
    case Kind::ConvexCombine:
      if (n.param == 0.0) return n.a->apply(x);
      if (n.param == 1.0) return n.b->apply(x);
      return checked((1.0 - n.param) * n.a->apply(x) + n.param * n.b->apply(x), "convex_combine");
    case Kind::Relax:
      return checked((1.0 - n.param) * x + n.param * n.a->apply(x), "relax");
    case Kind::Reflect: return checked(2.0 * n.a->apply(x) - x, "reflect");
    case Kind::Displacement: return checked(x - n.a->apply(x), "displacement");
    case Kind::Scale: return checked(n.param * n.a->apply(x), "scale");
  }
  throw Error("unknown operator node");
}

Point evaluate(const OperatorExpr& expr, const Point& x) {
  if (x.dim() != expr.dim())
    throw DimError("evaluate: point has dimension " + std::to_string(x.dim()) + ", operator " +
                   std::to_string(expr.dim()));
  return Point(expr.apply(x.coords()));
}

}  // namespace pcops
