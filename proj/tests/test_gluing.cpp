#include "lenstheta/errors.hpp"
#include "lenstheta/gluing.hpp"
#include "lenstheta/numtheory.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lenstheta;

namespace {

StateTerm term_with(const std::string& name, Rep rep, Side side, ResidualKind kind) {
  for (const auto& t : evaluate_diagram(catalogue_entry(name), rep))
    if (t.residual.size() == 1 && t.residual[0].side == side && t.residual[0].kind == kind) return t;
  throw std::runtime_error("missing term");
}

SplitConstants general_constants() {
  SplitConstants sc = SplitConstants::zero(3);
  set_antisymmetric(sc.g_low, 0, 1, 2, 1);
  set_antisymmetric(sc.h_up, 0, 1, 2, 1);
  set_antisymmetric_tail(sc.g_mid, 0, 1, 2, 1);
  set_antisymmetric_tail(sc.h_mid, 0, 1, 2, 1);
  return sc;
}

}  // namespace

TEST(Gluing, Validation) {
  EXPECT_NO_THROW(make_gluing(1, 2, 0, 1));
  EXPECT_THROW(make_gluing(1, 2, 1, 1), InvalidLensData);   // det -1
  EXPECT_THROW(make_gluing(1, -2, 0, 1), InvalidLensData);  // p < 0
  EXPECT_THROW(canonical_mn(4, 2), InvalidLensData);
  EXPECT_THROW(canonical_mn(0, 2), InvalidLensData);
}

TEST(Gluing, CanonicalMn) {
  EXPECT_EQ(canonical_mn(1, 0), (GluingMatrix{0, 1, -1, 0}));
  EXPECT_EQ(canonical_mn(0, 1), (GluingMatrix{1, 0, 0, 1}));
  EXPECT_EQ(canonical_mn(0, -1), (GluingMatrix{-1, 0, 0, -1}));
  for (long p = 2; p <= 60; ++p)
    for (long q = -p; q < 2 * p; ++q) {
      if (gcd(q, p) != 1) continue;
      const GluingMatrix g = canonical_mn(p, q);
      ASSERT_EQ(g.det(), 1);
      ASSERT_GE(g.m, 0);
      ASSERT_LT(g.m, p);
    }
}

TEST(Gluing, DehnTwist) {
  const GluingMatrix g = canonical_mn(5, 2);
  EXPECT_EQ(dehn_twist(g, TwistSide::Left, 2), (GluingMatrix{g.m, 5, g.n + 2 * g.m, 2 + 10}));
  EXPECT_EQ(dehn_twist(g, TwistSide::Right, -1), (GluingMatrix{g.m - 5, 5, g.n - 2, 2}));
  EXPECT_EQ(dehn_twist(g, TwistSide::Left, 3).det(), 1);
}

TEST(Pullback, Generators) {
  const GluingMatrix g = canonical_mn(5, 2);
  EXPECT_EQ(pullback_boundary(FormExpr::factor(Factor::dt(bdry(1))), g),
            Rational(g.m) * FormExpr::factor(Factor::dt(bdry(1))) + Rational(5) * FormExpr::factor(Factor::dtheta(bdry(1))));
  const FormExpr vol = wedge(FormExpr::factor(Factor::dt(bdry(1))), FormExpr::factor(Factor::dtheta(bdry(1))));
  EXPECT_EQ(pullback_boundary(vol, g), vol);
  EXPECT_EQ(pullback_boundary(FormExpr::one(), g), FormExpr::one());
  EXPECT_THROW(pullback_boundary(FormExpr::factor(Factor::mu(bulk(1))), g), FormDomainError);
}

TEST(Pairing, ZeroPointTerms) {
  const StateTerm a = term_with("Gamma0", Rep::A, Side::A, ResidualKind::ZPlus2);
  const StateTerm b = term_with("Gamma0", Rep::B, Side::B, ResidualKind::Z2);
  for (long p = 1; p <= 12; ++p) {
    const auto ts = pair_terms(a, b, canonical_mn(p, 1));
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_EQ(ts[0].coeff, p);
    EXPECT_EQ(ts[0].epsPower, -1);
  }
}

// Each leg bijection contributes the same value once the Lie tensors are contracted.
TEST(Pairing, LegSumEqualsFactorialTimesIdentity) {
  const StateTerm a = term_with("Gamma1_2b", Rep::A, Side::A, ResidualKind::ZPlus2);
  const StateTerm b = term_with("Gamma1_2b", Rep::B, Side::B, ResidualKind::Z2);
  ASSERT_EQ(a.legs.size(), 2u);
  auto [alg, split] = drinfeld_double(two_dim_bialgebra());
  const SplitConstants sc = build_split_constants(alg, split);
  const auto value = [&](const StateTerm& t, const GluingMatrix& g) {
    Rational v = 0;
    for (const auto& r : reduce_residuals({t}, g)) v += evaluate_scalar(r, sc);
    return v;
  };
  int nonzero = 0;
  for (long p = 1; p <= 9; ++p)
    for (long q = 0; q < std::max(2L, p); ++q) {
      if (gcd(p, q) != 1) continue;
      const GluingMatrix g = canonical_mn(p, q);
      const auto terms = pair_terms(a, b, g);
      if (terms.empty()) continue;
      ASSERT_EQ(terms.size(), 2u);
      const Rational id = value(terms[0], g);
      EXPECT_EQ(value(terms[0], g) + value(terms[1], g), 2 * id) << p << "," << q;
      nonzero += id != 0;
    }
  EXPECT_GT(nonzero, 0);
}

TEST(Pairing, UnmatchedLegsGiveNothing) {
  const StateTerm a = term_with("Gamma0", Rep::A, Side::A, ResidualKind::ZPlus2);
  const StateTerm b = term_with("Gamma1_2b", Rep::B, Side::B, ResidualKind::Z2);
  EXPECT_TRUE(pair_terms(a, b, canonical_mn(3, 1)).empty());
  EXPECT_TRUE(pair_states({a}, {b}, canonical_mn(3, 1), 5).empty());
}

TEST(Reduce, ZeroPointPairingGivesMinusHalfDim) {
  const StateTerm a = term_with("Gamma0", Rep::A, Side::A, ResidualKind::ZPlus2);
  const StateTerm b = term_with("Gamma0", Rep::B, Side::B, ResidualKind::Z2);
  auto [alg, split] = drinfeld_double(two_dim_bialgebra());
  const SplitConstants sc = build_split_constants(alg, split);
  for (long p = 1; p <= 7; ++p) {
    const GluingMatrix g = canonical_mn(p, 1);
    const auto reduced = reduce_residuals(pair_terms(a, b, g), g);
    ASSERT_EQ(reduced.size(), 1u);
    EXPECT_EQ(reduced[0].epsPower, 0);
    EXPECT_EQ(evaluate_scalar(reduced[0], sc), -sc.n);
  }
}

TEST(Reduce, DropsConjugateRedshirts) {
  StateTerm t{1, {}, {{Side::A, ResidualKind::Z2, 1}}, FormExpr::one(), {}, {}, 0, "", 0};
  EXPECT_TRUE(reduce_residuals({t}, canonical_mn(3, 1)).empty());
  t.residual = {{Side::B, ResidualKind::ZPlus2, 1}};
  EXPECT_TRUE(reduce_residuals({t}, canonical_mn(3, 1)).empty());
  t.residual = {{Side::A, ResidualKind::Z1, 1}, {Side::B, ResidualKind::ZPlus1, 2}};
  const auto r = reduce_residuals({t}, canonical_mn(3, 1));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].residual[0].side, Side::Glued);
  EXPECT_EQ(r[0].residual[0].kind, ResidualKind::Z2);
  EXPECT_EQ(r[0].residual[1].kind, ResidualKind::ZPlus1);
  EXPECT_THROW(reduce_residuals({t}, canonical_mn(0, 1)), InvalidLensData);
}

TEST(ClosedForm, MtValues) {
  EXPECT_EQ(two_loop_weight_mt(canonical_mn(2, 1), 1), make_rational(1, 12));
  EXPECT_EQ(two_loop_weight_mt(canonical_mn(1, 0), 1), 0);
  EXPECT_EQ(two_loop_weight_mt(canonical_mn(3, 1), 2), make_rational(1, 6));
  EXPECT_THROW(two_loop_weight_mt(canonical_mn(0, 1), 1), InvalidLensData);
}

TEST(ClosedForm, TwistShiftsByTwelfths) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> pd(1, 40), kd(-6, 6);
  for (int i = 0; i < 100; ++i) {
    const long p = pd(rng);
    const long q = std::uniform_int_distribution<long>(0, p)(rng);
    if (gcd(p, q) != 1) continue;
    const long k = kd(rng);
    const GluingMatrix g = canonical_mn(p, q);
    for (auto side : {TwistSide::Left, TwistSide::Right})
      EXPECT_EQ(two_loop_weight_mt(dehn_twist(g, side, k), 3) - two_loop_weight_mt(g, 3), make_rational(3 * k, 12));
  }
}

TEST(ClosedForm, NmtReducesToMtOnManinInput) {
  for (long p = 1; p <= 15; ++p)
    for (long q = 0; q < p; ++q) {
      if (gcd(p, q) != 1) continue;
      const GluingMatrix g = canonical_mn(p, q);
      for (auto v : {NmtVariant::Theorem, NmtVariant::SeffEq}) {
        const NmtWeight w = two_loop_weight_nmt(g, 2, 0, v);
        EXPECT_EQ(w.exact, two_loop_weight_mt(g, 2));
        EXPECT_NEAR(w.real.to_double(), w.exact.get_d(), 1e-15);
      }
    }
}

TEST(ClosedForm, KSumInvariantUnderQShift) {
  for (long p = 2; p <= 25; ++p)
    for (long q = 1; q < p; ++q) {
      if (gcd(p, q) != 1) continue;
      const GluingMatrix g = canonical_mn(p, q);
      const GluingMatrix h = dehn_twist(g, TwistSide::Left, 1);
      EXPECT_LT(static_cast<double>(abs(nmt_k_sum(g).value - nmt_k_sum(h).value)), 1e-30);
    }
}

TEST(ClosedForm, NmtHarmonicShiftUnderQShift) {
  // q -> q + p adds e/12 and e' p H_{1/p} / (2 pi^2).
  const GluingMatrix g = canonical_mn(7, 3);
  const GluingMatrix h = dehn_twist(g, TwistSide::Left, 1);
  const NmtWeight a = two_loop_weight_nmt(g, 1, 1, NmtVariant::Theorem);
  const NmtWeight b = two_loop_weight_nmt(h, 1, 1, NmtVariant::Theorem);
  const double pi = 3.14159265358979323846;
  const double expected = 1.0 / 12 + 7 * harmonic_real(make_rational(1, 7)).to_double() / (2 * pi * pi);
  EXPECT_NEAR((b.real.value - a.real.value).convert_to<double>(), expected, 1e-14);
}

TEST(ClosedForm, VariantsDiffer) {
  const GluingMatrix g = canonical_mn(5, 2);
  const NmtWeight t = two_loop_weight_nmt(g, 1, 1, NmtVariant::Theorem);
  const NmtWeight s = two_loop_weight_nmt(g, 1, 1, NmtVariant::SeffEq);
  EXPECT_EQ(t.exact, s.exact);
  EXPECT_GT(std::abs((t.real.value - s.real.value).convert_to<double>()), 1e-6);
}

TEST(Seff, AssembleUsesClass) {
  auto [alg, split] = drinfeld_double(two_dim_bialgebra());
  const SplitConstants mt = build_split_constants(alg, split);
  const LensSpace lens{canonical_mn(5, 2)};
  const EffectiveAction ea = assemble_Seff(lens, mt, {});
  EXPECT_EQ(ea.classUsed, SplittingClass::ManinTriple);
  EXPECT_EQ(ea.twoLoopExact, two_loop_weight_mt(lens.g, 2));
  EXPECT_EQ(ea.twoLoopReal.to_double(), 0.0);

  const SplitConstants gen = general_constants();
  const EffectiveAction eg = assemble_Seff(lens, gen, {});
  EXPECT_EQ(eg.classUsed, SplittingClass::General);
  const NmtWeight w = two_loop_weight_nmt(lens.g, coeff_e(gen), coeff_e_prime(gen), NmtVariant::Theorem);
  EXPECT_EQ(eg.twoLoopExact, w.exact);
  EXPECT_NEAR((eg.twoLoopReal.value + to_real(eg.twoLoopExact) - w.real.value).convert_to<double>(), 0.0, 1e-30);
}
