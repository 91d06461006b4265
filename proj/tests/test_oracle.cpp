#include "lenstheta/errors.hpp"
#include "lenstheta/numtheory.hpp"
#include "lenstheta/oracle.hpp"
#include "lenstheta/gluing.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lenstheta;

TEST(Oracle, DedekindNumeric) {
  for (long p = 1; p <= 60; ++p)
    for (long q = 0; q < p; ++q) {
      if (gcd(p, q) != 1) continue;
      EXPECT_NEAR(dedekind_numeric(q, p), dedekind_sum_fast(q, p).get_d(), 1e-13);
    }
}

TEST(Oracle, HarmonicIntegralAgreesWithSeries) {
  for (long p = 1; p <= 50; ++p) {
    const HighPrecisionReal a = harmonic_integral(to_real(make_rational(1, p)));
    const HighPrecisionReal b = harmonic_real(make_rational(1, p));
    EXPECT_NEAR((a.value - b.value).convert_to<double>(), 0.0, 1e-12) << p;
  }
  EXPECT_NEAR(harmonic_integral(Real(1)).to_double(), 1.0, 1e-15);
  EXPECT_NEAR(harmonic_integral(Real(0.5)).to_double(), 2 - 2 * std::log(2.0), 1e-15);
  EXPECT_THROW(harmonic_integral(Real(-0.5)), DomainError);
}

TEST(Oracle, Reciprocity) {
  const ReciprocityReport r = reciprocity_check(60);
  EXPECT_TRUE(r.ok);
  EXPECT_GT(r.pairsChecked, 1000);
}

TEST(Oracle, QuadratureSpecErrors) {
  EXPECT_THROW(QuadratureSpec::make(4), DomainError);
  EXPECT_THROW(QuadratureSpec::make(100, 1e-4), DomainError);
  EXPECT_NO_THROW(QuadratureSpec::make(100, 0.05));
  EXPECT_THROW(circle_pairing_numeric({}, {}, canonical_mn(3, 1), QuadratureSpec::make(100)), DomainError);
  EXPECT_THROW(circle_pairing_numeric({}, {}, canonical_mn(0, 1), QuadratureSpec::make(120)), InvalidLensData);
}

TEST(Oracle, Psi12KernelConverges) {
  const FormExpr kernel = parse_form("Dt(b3) * DeltaC(b2,b3) * EtaC(b2,b3;0,1)");
  for (long p = 1; p <= 5; ++p)
    for (long q = 1; q <= std::max(1L, p - 1); ++q) {
      if (gcd(p, q) != 1) continue;
      const GluingMatrix g = canonical_mn(p, q);
      const double exact = glue_kernels(kernel, {2, 3}, kernel, {2, 3}, {0, 1}, g).get_d();
      double prev = 1e9;
      for (long mult : {60, 120, 240}) {
        const double err = std::abs(circle_pairing_numeric({}, {}, g, QuadratureSpec::make(mult * p)).to_double() - exact);
        // p = 1 is exact to roundoff at every N.
        if (std::max(err, prev) > 1e-12) EXPECT_LT(err, prev) << p << "," << q << " N=" << mult * p;
        prev = err;
      }
      EXPECT_LT(prev, 1e-3) << p << "," << q;
    }
}
