#include "lenstheta/errors.hpp"
#include "lenstheta/numtheory.hpp"
#include "lenstheta/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lenstheta;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), make_rational(-7));
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(to_string(make_rational(1, -3)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("x"), InputError);
}

TEST(Rational, MakeRationalIsCanonical) {
  const Rational r = make_rational(2, 2);
  EXPECT_TRUE(is_integer(r));
  EXPECT_EQ(sawtooth(make_rational(4, 2)), 0);
}

TEST(Sawtooth, Values) {
  EXPECT_EQ(sawtooth(0), 0);
  EXPECT_EQ(sawtooth(make_rational(1, 2)), 0);
  EXPECT_EQ(sawtooth(make_rational(1, 3)), make_rational(-1, 6));
  EXPECT_EQ(sawtooth(make_rational(-1, 3)), make_rational(1, 6));
  EXPECT_EQ(sawtooth(make_rational(7, 4)), make_rational(1, 4));
}

TEST(Sawtooth, OddAndPeriodic) {
  for (long k = -20; k <= 20; ++k) {
    const Rational x = make_rational(k, 7);
    EXPECT_EQ(sawtooth(-x), -sawtooth(x));
    EXPECT_EQ(sawtooth(x + 1), sawtooth(x));
  }
}

TEST(Bernoulli2, Values) {
  EXPECT_EQ(periodic_bernoulli2(0), make_rational(1, 6));
  EXPECT_EQ(periodic_bernoulli2(make_rational(1, 2)), make_rational(-1, 12));
  EXPECT_EQ(periodic_bernoulli2(make_rational(5, 2)), make_rational(-1, 12));
}

TEST(Dedekind, KnownValues) {
  EXPECT_EQ(dedekind_sum_direct(1, 3), make_rational(1, 18));
  EXPECT_EQ(dedekind_sum_direct(0, 1), 0);
  EXPECT_EQ(dedekind_sum_direct(2, 5), 0);
  EXPECT_EQ(dedekind_sum_fast(1, 3), make_rational(1, 18));
  // s(1,p) = (p-1)(p-2)/(12p)
  for (long p = 2; p < 60; ++p) EXPECT_EQ(dedekind_sum_fast(1, p), make_rational((p - 1) * (p - 2), 12 * p));
}

TEST(Dedekind, DirectEqualsFast) {
  for (long p = 1; p <= 300; ++p)
    for (long q = -p; q <= 2 * p; ++q)
      if (gcd(q, p) == 1) ASSERT_EQ(dedekind_sum_direct(q, p), dedekind_sum_fast(q, p)) << q << "/" << p;
}

TEST(Dedekind, OddInQAndInverseInvariant) {
  for (long p = 2; p <= 80; ++p)
    for (long q = 1; q < p; ++q) {
      if (gcd(q, p) != 1) continue;
      EXPECT_EQ(dedekind_sum_fast(p - q, p), -dedekind_sum_fast(q, p));
      long inv = 1;
      while ((inv * q) % p != 1) ++inv;
      EXPECT_EQ(dedekind_sum_fast(inv, p), dedekind_sum_fast(q, p));
    }
}

TEST(Dedekind, Reciprocity) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(1, 100000);
  for (int i = 0; i < 500; ++i) {
    const long p = dist(rng), q = dist(rng);
    if (gcd(p, q) != 1) continue;
    EXPECT_EQ(dedekind_sum_fast(p, q) + dedekind_sum_fast(q, p), reciprocity_rhs(p, q));
  }
}

TEST(Dedekind, Errors) {
  EXPECT_THROW(dedekind_sum_direct(2, 4), InvalidLensData);
  EXPECT_THROW(dedekind_sum_fast(1, 0), InvalidLensData);
}

TEST(Dedekind, OracleAgrees) {
  for (long p = 1; p <= 100; ++p)
    for (long q = 0; q < p; ++q)
      if (gcd(q, p) == 1) EXPECT_NEAR(dedekind_numeric(q, p), dedekind_sum_fast(q, p).get_d(), 1e-13 * p);
}

TEST(Harmonic, IntegerAndHalf) {
  EXPECT_NEAR(harmonic_real(make_rational(1)).to_double(), 1.0, 1e-15);
  EXPECT_NEAR(harmonic_real(make_rational(3)).to_double(), 11.0 / 6, 1e-15);
  EXPECT_NEAR(harmonic_real(make_rational(1, 2)).to_double(), 2 - 2 * std::log(2.0), 1e-15);
  EXPECT_NEAR(harmonic_real(Real(0)).to_double(), 0.0, 1e-30);
  EXPECT_THROW(harmonic_real(make_rational(-1)), DomainError);
}

TEST(Harmonic, Recurrence) {
  // H_x = H_{x-1} + 1/x
  for (long k = 2; k < 40; ++k) {
    const Rational x = make_rational(k, 7);
    const Real d = harmonic_real(x).value - harmonic_real(Rational(x - 1)).value - 1 / to_real(x);
    EXPECT_LT(abs(d), Real(1e-40));
  }
}

TEST(FTheta, ZeroOnIntegersAndOdd) {
  EXPECT_EQ(f_theta(make_rational(3)).to_double(), 0.0);
  for (long k = 1; k < 12; ++k) {
    const Rational x = make_rational(k, 13);
    EXPECT_NEAR(f_theta(-x).to_double(), -f_theta(x).to_double(), 1e-30);
  }
}
