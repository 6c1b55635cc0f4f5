#include "pcops/certificate.hpp"

#include <cmath>
#include <limits>

#include "format.hpp"
#include "pcops/errors.hpp"

namespace pcops {

namespace {

constexpr double kRelTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kRelTol * std::max(1.0, std::abs(b)); }

void require_positive_finite(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ParamError(std::string(name) + " must be a positive finite real, got " +
                     detail::shortest(v));
}

}  // namespace

Certificate Certificate::nonexpansive() { return {CertClass::Nonexpansive, 0.0, IsmSubject::Operator}; }

Certificate Certificate::pseudocontractive(double nu) {
  require_positive_finite(nu, "nu");
  return {CertClass::Pseudocontractive, 1.0 / (1.0 + nu), IsmSubject::Operator};
}

Certificate Certificate::averaged(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParamError("alpha must lie in the open interval (0, 1), got " + detail::shortest(alpha));
  return {CertClass::Averaged, alpha, IsmSubject::Operator};
}

Certificate Certificate::pseudocontractive_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParamError("alpha must lie in the open interval (0, 1), got " + detail::shortest(alpha));
  return {CertClass::Pseudocontractive, alpha, IsmSubject::Operator};
}

Certificate Certificate::identity() { return {CertClass::Averaged, 0.0, IsmSubject::Operator}; }

Certificate Certificate::inverse_strongly_monotone(double sigma, IsmSubject subject) {
  require_positive_finite(sigma, "sigma");
  return {CertClass::InverseStronglyMonotone, sigma, subject};
}

double Certificate::alpha() const {
  if (!is_averaged_family()) throw CertError(describe() + " carries no averaging parameter");
  return value_;
}

double Certificate::nu() const {
  const double a = alpha();
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 - a) / a;
}

double Certificate::displacement_sigma() const {
  const double a = alpha();
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * a);
}

double Certificate::sigma() const {
  if (class_ != CertClass::InverseStronglyMonotone)
    throw CertError(describe() + " is not an inverse-strong-monotonicity certificate");
  return value_;
}

std::string Certificate::describe() const {
  switch (class_) {
    case CertClass::Nonexpansive:
      return "Nonexpansive";
    case CertClass::Pseudocontractive:
      return "Pseudocontractive(nu=" + detail::shortest(nu()) + ")";
    case CertClass::Averaged:
      if (value_ == 0.0) return "Identity(alpha=0)";
      return "Averaged(alpha=" + detail::shortest(value_) + ")";
    case CertClass::InverseStronglyMonotone:
      return "ISM(sigma=" + detail::shortest(value_) +
             (subject_ == IsmSubject::Displacement ? ", of I-T)" : ")");
  }
  return "?";
}

const char* to_string(CertClass c) {
  switch (c) {
    case CertClass::Nonexpansive: return "Nonexpansive";
    case CertClass::Pseudocontractive: return "Pseudocontractive";
    case CertClass::Averaged: return "Averaged";
    case CertClass::InverseStronglyMonotone: return "InverseStronglyMonotone";
  }
  return "?";
}

Certificate convert_certificate(const Certificate& cert, CertClass target, IsmSubject subject) {
  auto unsupported = [&] {
    return ConversionError("no equivalence from " + cert.describe() + " to " + to_string(target) +
                           (target == CertClass::InverseStronglyMonotone
                                ? (subject == IsmSubject::Displacement ? " (of I-T)" : " (of T)")
                                : ""));
  };

  // Averaging parameter of the operator itself, when one is exactly implied.
  std::optional<double> alpha;
  if (cert.is_averaged_family()) {
    if (cert.is_identity()) throw unsupported();
    alpha = cert.alpha();
  } else if (cert.cert_class() == CertClass::InverseStronglyMonotone) {
    const double s = cert.sigma();
    if (cert.subject() == IsmSubject::Displacement && s > 0.5) {
      alpha = 1.0 / (2.0 * s);
    } else if (cert.subject() == IsmSubject::Operator && near(s, 1.0)) {
      alpha = 0.5;
    }
  }
  if (!alpha) throw unsupported();

  switch (target) {
    case CertClass::Averaged:
      return Certificate::averaged(*alpha);
    case CertClass::Pseudocontractive:
      return Certificate::pseudocontractive_alpha(*alpha);
    case CertClass::InverseStronglyMonotone:
      if (subject == IsmSubject::Displacement)
        return Certificate::inverse_strongly_monotone(1.0 / (2.0 * *alpha), IsmSubject::Displacement);
      if (near(*alpha, 0.5)) return Certificate::inverse_strongly_monotone(1.0, IsmSubject::Operator);
      throw unsupported();
    case CertClass::Nonexpansive:
      break;
  }
  throw unsupported();
}

std::optional<double> closure_alpha(const Certificate& cert) {
  switch (cert.cert_class()) {
    case CertClass::Pseudocontractive:
    case CertClass::Averaged:
      return cert.alpha();
    case CertClass::Nonexpansive:
      return 1.0;
    case CertClass::InverseStronglyMonotone:
      if (cert.subject() == IsmSubject::Operator && cert.sigma() >= 1.0) return 0.5;
      if (cert.subject() == IsmSubject::Displacement && cert.sigma() >= 0.5)
        return 1.0 / (2.0 * cert.sigma());
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

double require_closure_alpha(const Certificate& c, const char* op) {
  auto a = closure_alpha(c);
  if (!a) throw CertError(std::string(op) + ": " + c.describe() + " has no averaged reading");
  return *a;
}

Certificate from_closure_alpha(double a) {
  if (a == 0.0) return Certificate::identity();
  if (a >= 1.0) return Certificate::nonexpansive();
  return Certificate::averaged(a);
}

void require_firm(const Certificate& inner, const char* op) {
  if (!inner.is_averaged_family())
    throw CertError(std::string(op) + " requires a firmly nonexpansive operand, got " +
                    inner.describe());
  // nu >= 1  <=>  alpha <= 1/2
  if (inner.alpha() > 0.5)
    throw CertError(std::string(op) + " requires nu >= 1, got " + inner.describe());
}

}  // namespace

Certificate cert_relax(const Certificate& inner, double omega) {
  if (!(omega > 0.0 && omega < 2.0))
    throw ParamError("omega must lie in the open interval (0, 2), got " + detail::shortest(omega));
  require_firm(inner, "relax");
  // (2 - omega) / omega in nu form is alpha = omega / 2.
  return Certificate::pseudocontractive_alpha(omega / 2.0);
}

Certificate cert_reflect(const Certificate& inner) {
  require_firm(inner, "reflect");
  return Certificate::nonexpansive();
}

Certificate cert_compose(const Certificate& outer, const Certificate& inner) {
  const double a1 = require_closure_alpha(outer, "compose");
  const double a2 = require_closure_alpha(inner, "compose");
  if (a1 >= 1.0 || a2 >= 1.0) return Certificate::nonexpansive();
  return from_closure_alpha((a1 + a2 - 2.0 * a1 * a2) / (1.0 - a1 * a2));
}

Certificate cert_combine(double t, const Certificate& left, const Certificate& right) {
  if (!(t >= 0.0 && t <= 1.0))
    throw ParamError("t must lie in the closed interval [0, 1], got " + detail::shortest(t));
  const double a1 = require_closure_alpha(left, "combine");
  const double a2 = require_closure_alpha(right, "combine");
  return from_closure_alpha((1.0 - t) * a1 + t * a2);
}

Certificate cert_displacement(const Certificate& inner) {
  switch (inner.cert_class()) {
    case CertClass::Pseudocontractive:
    case CertClass::Averaged:
      if (inner.is_identity())
        throw CertError("displacement of the identity is the zero map; no finite modulus applies");
      return Certificate::inverse_strongly_monotone(inner.displacement_sigma());
    case CertClass::Nonexpansive:
      return Certificate::inverse_strongly_monotone(0.5);
    case CertClass::InverseStronglyMonotone: {
      if (inner.subject() != IsmSubject::Operator)
        throw CertError("displacement: " + inner.describe() + " does not describe the operand");
      const double s = inner.sigma();
      if (s > 0.5) return Certificate::pseudocontractive_alpha(1.0 / (2.0 * s));
      if (s == 0.5) return Certificate::nonexpansive();
      throw CertError("displacement of a sigma-ISM map needs sigma >= 1/2, got " + inner.describe());
    }
  }
  throw CertError("displacement: unsupported certificate");
}

Certificate cert_scale(const Certificate& inner, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ParamError("scale factor gamma must be positive, got " + detail::shortest(gamma));
  if (inner.cert_class() != CertClass::InverseStronglyMonotone ||
      inner.subject() != IsmSubject::Operator)
    throw CertError("scale applies only to inverse strongly monotone maps, got " + inner.describe());
  return Certificate::inverse_strongly_monotone(inner.sigma() / gamma);
}

}  // namespace pcops
