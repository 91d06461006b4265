#include "lenstheta/errors.hpp"
#include "lenstheta/numtheory.hpp"
#include "lenstheta/pipeline.hpp"

#include <gtest/gtest.h>

using namespace lenstheta;

namespace {

SplitConstants double_constants() {
  auto [alg, split] = drinfeld_double(two_dim_bialgebra());
  return build_split_constants(alg, split);
}

}  // namespace

TEST(Pipeline, TraceEntries) {
  const SplitConstants sc = double_constants();
  const GluingMatrix g = canonical_mn(7, 3);
  const PipelineResult r = end_to_end_trace(g, sc);
  EXPECT_EQ(r.weight, two_loop_weight_mt(g, coeff_e(sc)));
  std::map<std::string, Rational> byPair;
  for (const auto& e : r.trace) byPair[e.aSide + "|" + e.bSide] += e.value;
  const Rational e = coeff_e(sc);
  EXPECT_EQ(byPair["Gamma2_1|Gamma0"], e * make_rational(g.m, 12 * g.p));
  EXPECT_EQ(byPair["Gamma0|Gamma2_1"], e * make_rational(g.q, 12 * g.p));
  EXPECT_EQ(byPair["Gamma1_2b|Gamma1_2b"], e * dedekind_sum_fast(g.q, g.p) / 2);
}

TEST(Pipeline, MatchesClosedForm) {
  const SplitConstants sc = double_constants();
  for (long p = 1; p <= 12; ++p)
    for (long q = 0; q < std::max(2L, p); ++q) {
      if (gcd(p, q) != 1) continue;
      const LensSpace lens{canonical_mn(p, q)};
      EXPECT_EQ(end_to_end_weight_mt(lens, sc), two_loop_weight_mt(lens.g, coeff_e(sc))) << p << "," << q;
    }
}

TEST(Pipeline, RejectsNonManin) {
  SplitConstants sc = SplitConstants::zero(3);
  set_antisymmetric(sc.g_low, 0, 1, 2, 1);
  EXPECT_THROW(end_to_end_weight_mt(LensSpace{canonical_mn(3, 1)}, sc), AlgebraError);
}

TEST(Pipeline, Psi12Coefficient) {
  for (long p = 1; p <= 20; ++p)
    for (long q = 0; q < std::max(2L, p); ++q) {
      if (gcd(p, q) != 1) continue;
      const GluingMatrix g = canonical_mn(p, q);
      EXPECT_EQ(psi12_pairing_coefficient(g), -Rational(p) / 2 * dedekind_sum_fast(q, p)) << p << "," << q;
    }
}

TEST(Pipeline, Psi12AtPZero) {
  // The same kernel calculus gives -q/12 on S1 x S2; the expected value there is +q/12.
  EXPECT_EQ(psi12_pairing_coefficient(canonical_mn(0, 1)), make_rational(-1, 12));
  EXPECT_EQ(psi12_pairing_coefficient(canonical_mn(0, -1)), make_rational(1, 12));
}

TEST(Pipeline, Gamma0Coefficient) {
  for (long p = 0; p <= 20; ++p) EXPECT_EQ(gamma0_pairing_coefficient(canonical_mn(p, 1)), p);
}

TEST(Pipeline, CubicTerms) {
  const auto cubic = cubic_effective_terms(canonical_mn(5, 2));
  ASSERT_FALSE(cubic.empty());
  for (const auto& t : cubic) {
    EXPECT_EQ(t.residual.size(), 3u);
    for (const auto& v : t.residual) EXPECT_EQ(v.side, Side::Glued);
  }
  EXPECT_THROW(cubic_effective_terms(canonical_mn(0, 1)), InvalidLensData);
}
