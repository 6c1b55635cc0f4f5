#pragma once

#include <optional>
#include <string>

namespace pcops {

/// Operator classes a certificate can assert.
///
/// "Pseudocontractive" follows the convention
///   ||Tx - Ty||^2 <= ||x - y||^2 - nu ||Gx - Gy||^2,  G = I - T,  nu > 0,
/// which is *not* the meaning the word carries in parts of the parallel
/// computation literature. No other reading is supported.
enum class CertClass {
  Nonexpansive,
  Pseudocontractive,
  Averaged,
  InverseStronglyMonotone,
};

/// Which operator an inverse-strong-monotonicity statement is about: the
/// certified operator itself, or its displacement I - T.
enum class IsmSubject { Operator, Displacement };

/// Tagged operator-class record.
///
/// Pseudocontractive and Averaged certificates share one canonical store, the
/// averaging parameter alpha; nu = (1 - alpha) / alpha and the displacement
/// modulus 1 / (2 alpha) are derived views. Firm nonexpansiveness is
/// Pseudocontractive(1) == Averaged(1/2). The identity map is the single
/// operator allowed alpha = 0 (nu view +inf).
class Certificate {
 public:
  static Certificate nonexpansive();
  static Certificate pseudocontractive(double nu);
  static Certificate firmly_nonexpansive() { return pseudocontractive(1.0); }
  static Certificate averaged(double alpha);
  /// Pseudocontractive certificate given directly in canonical alpha form.
  static Certificate pseudocontractive_alpha(double alpha);
  static Certificate identity();
  static Certificate inverse_strongly_monotone(double sigma,
                                               IsmSubject subject = IsmSubject::Operator);

  CertClass cert_class() const noexcept { return class_; }
  IsmSubject subject() const noexcept { return subject_; }

  /// Pseudocontractive or Averaged (including identity).
  bool is_averaged_family() const noexcept {
    return class_ == CertClass::Pseudocontractive || class_ == CertClass::Averaged;
  }
  bool is_identity() const noexcept { return is_averaged_family() && value_ == 0.0; }

  double alpha() const;
  double nu() const;
  /// Modulus of I - T under the averaged/ISM equivalence: 1 / (2 alpha).
  double displacement_sigma() const;
  double sigma() const;

  std::string describe() const;

  friend bool operator==(const Certificate&, const Certificate&) = default;

 private:
  Certificate(CertClass c, double value, IsmSubject subject)
      : class_(c), value_(value), subject_(subject) {}

  CertClass class_;
  double value_;  // alpha for the averaged family, sigma for ISM, unused otherwise
  IsmSubject subject_;
};

const char* to_string(CertClass c);

/// Re-express `cert` in `target` form for the same operator. Only exact
/// equivalences are performed:
///   Pseudocontractive(nu) <-> Averaged(alpha), nu = (1 - alpha) / alpha;
///   Averaged(alpha) <-> ISM(1 / (2 alpha)) of the displacement;
///   Pseudocontractive(1) <-> ISM(1) of the operator itself.
/// Anything else throws ConversionError.
Certificate convert_certificate(const Certificate& cert, CertClass target,
                                IsmSubject subject = IsmSubject::Displacement);

/// Averaging parameter usable by the closure formulas: alpha in [0, 1) for the
/// averaged family, 1 for Nonexpansive, 1/2 for an operator that is
/// sigma-ISM with sigma >= 1. Empty when no such reading exists.
std::optional<double> closure_alpha(const Certificate& cert);

/// (1 - omega) I + omega F for F with nu >= 1: Pseudocontractive((2 - omega) / omega).
Certificate cert_relax(const Certificate& inner, double omega);

/// 2F - I for F with nu >= 1: Nonexpansive.
Certificate cert_reflect(const Certificate& inner);

/// T1 T2: alpha = (a1 + a2 - 2 a1 a2) / (1 - a1 a2). Nonexpansive if either
/// factor is only nonexpansive.
Certificate cert_compose(const Certificate& outer, const Certificate& inner);

/// (1 - t) T1 + t T2: alpha = (1 - t) a1 + t a2.
Certificate cert_combine(double t, const Certificate& left, const Certificate& right);

/// I - T. Averaged(alpha) maps to ISM((1 + nu) / 2); an ISM(sigma) operator M
/// maps back to Averaged(1 / (2 sigma)) for sigma > 1/2, Nonexpansive at 1/2.
Certificate cert_displacement(const Certificate& inner);

/// gamma M for M sigma-ISM: ISM(sigma / gamma).
Certificate cert_scale(const Certificate& inner, double gamma);

}  // namespace pcops
