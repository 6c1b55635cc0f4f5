#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "pcops/certificate.hpp"
#include "pcops/errors.hpp"

using namespace pcops;

namespace {
constexpr double kRel = 1e-12;

void expect_rel(double actual, double expected) {
  EXPECT_NEAR(actual, expected, kRel * std::max(1.0, std::abs(expected)));
}
}  // namespace

TEST(Certificate, FactoriesValidateParameters) {
  EXPECT_THROW(Certificate::pseudocontractive(0.0), ParamError);
  EXPECT_THROW(Certificate::pseudocontractive(-1.0), ParamError);
  EXPECT_THROW(Certificate::pseudocontractive(std::nan("")), ParamError);
  EXPECT_THROW(Certificate::averaged(0.0), ParamError);
  EXPECT_THROW(Certificate::averaged(1.0), ParamError);
  EXPECT_THROW(Certificate::inverse_strongly_monotone(0.0), ParamError);
  EXPECT_NO_THROW(Certificate::averaged(0.999));
}

TEST(Certificate, FirmlyNonexpansiveIsNuOne) {
  const Certificate c = Certificate::firmly_nonexpansive();
  EXPECT_EQ(c.cert_class(), CertClass::Pseudocontractive);
  EXPECT_EQ(c.nu(), 1.0);
  EXPECT_EQ(c.alpha(), 0.5);
}

TEST(Certificate, IdentityHasAlphaZero) {
  const Certificate c = Certificate::identity();
  EXPECT_TRUE(c.is_identity());
  EXPECT_EQ(c.alpha(), 0.0);
  EXPECT_EQ(c.nu(), std::numeric_limits<double>::infinity());
}

TEST(Certificate, NonexpansiveCarriesNoNu) {
  EXPECT_THROW(Certificate::nonexpansive().nu(), CertError);
  EXPECT_THROW(Certificate::nonexpansive().sigma(), CertError);
}

TEST(ConvertCertificate, NuOneToHalfAveraged) {
  const Certificate c = convert_certificate(Certificate::pseudocontractive(1.0), CertClass::Averaged);
  EXPECT_EQ(c.cert_class(), CertClass::Averaged);
  EXPECT_EQ(c.alpha(), 0.5);
}

TEST(ConvertCertificate, HalfAveragedToDisplacementIsmOne) {
  const Certificate c =
      convert_certificate(Certificate::averaged(0.5), CertClass::InverseStronglyMonotone);
  EXPECT_EQ(c.cert_class(), CertClass::InverseStronglyMonotone);
  EXPECT_EQ(c.subject(), IsmSubject::Displacement);
  EXPECT_EQ(c.sigma(), 1.0);
}

TEST(ConvertCertificate, NuThreeToQuarterAveraged) {
  const Certificate c = convert_certificate(Certificate::pseudocontractive(3.0), CertClass::Averaged);
  expect_rel(c.alpha(), 0.25);
}

TEST(ConvertCertificate, FirmlyNonexpansiveIsOneIsmOfItself) {
  const Certificate c = convert_certificate(Certificate::firmly_nonexpansive(),
                                            CertClass::InverseStronglyMonotone, IsmSubject::Operator);
  EXPECT_EQ(c.subject(), IsmSubject::Operator);
  EXPECT_EQ(c.sigma(), 1.0);
  const Certificate back = convert_certificate(c, CertClass::Pseudocontractive);
  EXPECT_EQ(back.nu(), 1.0);
}

TEST(ConvertCertificate, UnsupportedPairsThrow) {
  EXPECT_THROW(convert_certificate(Certificate::nonexpansive(), CertClass::Pseudocontractive),
               ConversionError);
  EXPECT_THROW(convert_certificate(Certificate::nonexpansive(), CertClass::Averaged), ConversionError);
  EXPECT_THROW(convert_certificate(Certificate::averaged(0.5), CertClass::Nonexpansive),
               ConversionError);
  // Operator-ISM other than 1 has no exact averaged reading.
  EXPECT_THROW(convert_certificate(Certificate::inverse_strongly_monotone(2.0), CertClass::Averaged),
               ConversionError);
  // Displacement ISM at or below 1/2 is only nonexpansiveness of T.
  EXPECT_THROW(convert_certificate(Certificate::inverse_strongly_monotone(0.5, IsmSubject::Displacement),
                                   CertClass::Averaged),
               ConversionError);
  EXPECT_THROW(convert_certificate(Certificate::identity(), CertClass::InverseStronglyMonotone),
               ConversionError);
}

class ConversionRoundTrip : public ::testing::TestWithParam<double> {};

TEST_P(ConversionRoundTrip, NuAlphaSigmaRoundTrips) {
  const double nu = GetParam();
  const Certificate p = Certificate::pseudocontractive(nu);
  const Certificate a = convert_certificate(p, CertClass::Averaged);
  const Certificate s = convert_certificate(a, CertClass::InverseStronglyMonotone);
  const Certificate a2 = convert_certificate(s, CertClass::Averaged);
  const Certificate p2 = convert_certificate(a2, CertClass::Pseudocontractive);
  expect_rel(a.alpha(), 1.0 / (1.0 + nu));
  expect_rel(s.sigma(), (1.0 + nu) / 2.0);
  expect_rel(a2.alpha(), a.alpha());
  expect_rel(p2.nu(), nu);
  expect_rel(convert_certificate(a, CertClass::Pseudocontractive).nu(), nu);
}

INSTANTIATE_TEST_SUITE_P(Grid, ConversionRoundTrip,
                         ::testing::Values(1e-6, 0.01, 1.0 / 3.0, 0.5, 1.0, 2.0, 3.0, 7.5, 1e3));

TEST(CertRelax, SpecExamples) {
  const Certificate fne = Certificate::firmly_nonexpansive();
  EXPECT_EQ(cert_relax(fne, 1.0).nu(), 1.0);
  expect_rel(cert_relax(fne, 1.5).nu(), 1.0 / 3.0);
  expect_rel(cert_relax(fne, 0.5).nu(), 3.0);
}

TEST(CertRelax, FormulaOverGrid) {
  for (double w = 0.05; w < 2.0; w += 0.05)
    expect_rel(cert_relax(Certificate::firmly_nonexpansive(), w).nu(), (2.0 - w) / w);
}

TEST(CertRelax, WindowAndInnerRequirements) {
  const Certificate fne = Certificate::firmly_nonexpansive();
  EXPECT_THROW(cert_relax(fne, 0.0), ParamError);
  EXPECT_THROW(cert_relax(fne, 2.0), ParamError);
  EXPECT_THROW(cert_relax(fne, -0.5), ParamError);
  EXPECT_THROW(cert_relax(Certificate::pseudocontractive(0.5), 1.0), CertError);
  EXPECT_THROW(cert_relax(Certificate::nonexpansive(), 1.0), CertError);
  EXPECT_NO_THROW(cert_relax(Certificate::pseudocontractive(4.0), 1.0));
}

TEST(CertReflect, NeedsFirmNonexpansiveness) {
  EXPECT_EQ(cert_reflect(Certificate::firmly_nonexpansive()).cert_class(), CertClass::Nonexpansive);
  EXPECT_EQ(cert_reflect(Certificate::pseudocontractive(2.0)).cert_class(), CertClass::Nonexpansive);
  EXPECT_THROW(cert_reflect(Certificate::pseudocontractive(0.9)), CertError);
  EXPECT_THROW(cert_reflect(Certificate::nonexpansive()), CertError);
}

TEST(CertCompose, HalfHalfIsTwoThirds) {
  const Certificate c = cert_compose(Certificate::averaged(0.5), Certificate::averaged(0.5));
  EXPECT_EQ(c.alpha(), 2.0 / 3.0);
  expect_rel(c.nu(), 0.5);
}

TEST(CertCompose, WithIdentityKeepsAlpha) {
  EXPECT_EQ(cert_compose(Certificate::averaged(0.5), Certificate::identity()).alpha(), 0.5);
  EXPECT_EQ(cert_compose(Certificate::identity(), Certificate::averaged(0.5)).alpha(), 0.5);
  EXPECT_TRUE(cert_compose(Certificate::identity(), Certificate::identity()).is_identity());
}

TEST(CertCompose, GradientStepThenProjectionMatchesClosedForm) {
  for (double gl : {0.1, 0.5, 1.0, 1.5, 1.9}) {
    const Certificate step = Certificate::pseudocontractive_alpha(gl / 2.0);
    const Certificate c = cert_compose(Certificate::firmly_nonexpansive(), step);
    expect_rel(c.nu(), 1.0 - gl / 2.0);
  }
}

TEST(CertCompose, SymmetricInArguments) {
  const double as[] = {0.0, 0.1, 0.3, 0.5, 0.77, 0.95};
  for (double a1 : as)
    for (double a2 : as) {
      auto mk = [](double a) { return a == 0.0 ? Certificate::identity() : Certificate::averaged(a); };
      EXPECT_EQ(cert_compose(mk(a1), mk(a2)).alpha(), cert_compose(mk(a2), mk(a1)).alpha());
    }
}

TEST(CertCompose, NonexpansiveAbsorbs) {
  EXPECT_EQ(cert_compose(Certificate::nonexpansive(), Certificate::averaged(0.5)).cert_class(),
            CertClass::Nonexpansive);
  EXPECT_EQ(cert_compose(Certificate::averaged(0.5), Certificate::nonexpansive()).cert_class(),
            CertClass::Nonexpansive);
}

TEST(CertCompose, DisplacementIsmBelowHalfIsUncertified) {
  EXPECT_THROW(cert_compose(Certificate::inverse_strongly_monotone(0.25, IsmSubject::Displacement),
                            Certificate::averaged(0.5)),
               CertError);
}

TEST(CertCombine, SpecExamples) {
  expect_rel(cert_combine(0.0, Certificate::averaged(0.3), Certificate::averaged(0.9)).alpha(), 0.3);
  EXPECT_EQ(cert_combine(0.5, Certificate::averaged(0.5), Certificate::averaged(0.5)).alpha(), 0.5);
  expect_rel(cert_combine(0.25, Certificate::averaged(0.2), Certificate::averaged(0.6)).alpha(), 0.3);
}

TEST(CertCombine, RejectsOutOfRangeT) {
  EXPECT_THROW(cert_combine(-0.1, Certificate::averaged(0.5), Certificate::averaged(0.5)), ParamError);
  EXPECT_THROW(cert_combine(1.1, Certificate::averaged(0.5), Certificate::averaged(0.5)), ParamError);
}

TEST(CertCombine, IdentityWithNonexpansiveIsAveraged) {
  const Certificate c = cert_combine(0.5, Certificate::identity(), Certificate::nonexpansive());
  EXPECT_EQ(c.alpha(), 0.5);
  expect_rel(cert_combine(0.3, Certificate::identity(), Certificate::nonexpansive()).nu(), 7.0 / 3.0);
  EXPECT_EQ(cert_combine(1.0, Certificate::identity(), Certificate::nonexpansive()).cert_class(),
            CertClass::Nonexpansive);
}

TEST(CertDisplacement, SpecExamples) {
  EXPECT_EQ(cert_displacement(Certificate::pseudocontractive(1.0)).sigma(), 1.0);
  expect_rel(cert_displacement(Certificate::pseudocontractive(3.0)).sigma(), 2.0);
  const double near_zero = cert_displacement(Certificate::pseudocontractive(1e-9)).sigma();
  EXPECT_NEAR(near_zero, 0.5, 1e-9);
  EXPECT_GT(near_zero, 0.5);
}

TEST(CertDisplacement, OfNonexpansiveIsHalfIsm) {
  const Certificate c = cert_displacement(Certificate::nonexpansive());
  EXPECT_EQ(c.sigma(), 0.5);
  EXPECT_EQ(c.subject(), IsmSubject::Operator);
}

TEST(CertDisplacement, OfIsmOperatorIsAveraged) {
  // I - M for M sigma-ISM with sigma > 1/2 is 1/(2 sigma)-averaged.
  const Certificate c = cert_displacement(Certificate::inverse_strongly_monotone(2.0));
  expect_rel(c.alpha(), 0.25);
  expect_rel(c.nu(), 3.0);
  EXPECT_EQ(cert_displacement(Certificate::inverse_strongly_monotone(0.5)).cert_class(),
            CertClass::Nonexpansive);
  EXPECT_THROW(cert_displacement(Certificate::inverse_strongly_monotone(0.4)), CertError);
}

TEST(CertDisplacement, OfIdentityIsUncertified) {
  EXPECT_THROW(cert_displacement(Certificate::identity()), CertError);
}

TEST(CertScale, SpecExamples) {
  EXPECT_EQ(cert_scale(Certificate::inverse_strongly_monotone(1.0), 1.0).sigma(), 1.0);
  EXPECT_EQ(cert_scale(Certificate::inverse_strongly_monotone(1.0), 0.5).sigma(), 2.0);
  EXPECT_EQ(cert_scale(Certificate::inverse_strongly_monotone(0.5), 2.0).sigma(), 0.25);
}

TEST(CertScale, Errors) {
  EXPECT_THROW(cert_scale(Certificate::inverse_strongly_monotone(1.0), 0.0), ParamError);
  EXPECT_THROW(cert_scale(Certificate::inverse_strongly_monotone(1.0), -1.0), ParamError);
  EXPECT_THROW(cert_scale(Certificate::firmly_nonexpansive(), 1.0), CertError);
  EXPECT_THROW(cert_scale(Certificate::inverse_strongly_monotone(1.0, IsmSubject::Displacement), 1.0),
               CertError);
}

TEST(CertScale, ScaleRoundTripIsExact) {
  for (double g : {0.25, 0.5, 2.0, 4.0}) {
    const Certificate s = cert_scale(cert_scale(Certificate::inverse_strongly_monotone(1.0), g), 1.0 / g);
    expect_rel(s.sigma(), 1.0);
  }
}

TEST(Certificate, DescribeIsReadable) {
  EXPECT_EQ(Certificate::firmly_nonexpansive().describe(), "Pseudocontractive(nu=1)");
  EXPECT_EQ(Certificate::averaged(0.25).describe(), "Averaged(alpha=0.25)");
  EXPECT_EQ(Certificate::identity().describe(), "Identity(alpha=0)");
  EXPECT_EQ(Certificate::inverse_strongly_monotone(2.0, IsmSubject::Displacement).describe(),
            "ISM(sigma=2, of I-T)");
}
