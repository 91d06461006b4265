#pragma once

#include "lenstheta/algebra.hpp"
#include "lenstheta/forms.hpp"
#include "lenstheta/graphs.hpp"
#include "lenstheta/rational.hpp"
#include "lenstheta/real.hpp"

#include <string>
#include <vector>

namespace lenstheta {

// Boundary identification (t, theta) -> (m t + p theta, n t + q theta), mq - np = 1.
struct GluingMatrix {
  long m = 1, p = 0, n = 0, q = 1;

  long det() const { return m * q - n * p; }
  bool operator==(const GluingMatrix&) const = default;
};

// Validates mq - np = 1, p >= 0 and gcd(p,q) = 1; throws InvalidLensData.
GluingMatrix make_gluing(long m, long p, long n, long q);

// Extended Euclid solution with 0 <= m < p (p > 1); (0,-1) for p = 1; m = q, n = 0 for p = 0.
GluingMatrix canonical_mn(long p, long q);

struct LensSpace {
  GluingMatrix g;
  bool s1xs2() const { return g.p == 0; }
};

enum class TwistSide { Left, Right };

// Left: (q,n) -> (q + kp, n + km). Right: (m,n) -> (m + kp, n + kq).
GluingMatrix dehn_twist(const GluingMatrix& g, TwistSide side, long k);

// Dt -> m Dt + p Dtheta, Dtheta -> n Dt + q Dtheta, circle arguments transformed alike.
FormExpr pullback_boundary(const FormExpr& e, const GluingMatrix& g);

// Integral over (T^2)^n of kernelA * phi^* kernelB, where B leg sigma[k] is glued to A leg k.
Rational glue_kernels(const FormExpr& kernelA, const std::vector<int>& legsA, const FormExpr& kernelB,
                      const std::vector<int>& legsB, const std::vector<int>& sigma, const GluingMatrix& g);

// Product of state terms (one term of the exponentiated state); labels and legs renumbered.
StateTerm multiply_terms(const std::vector<StateTerm>& pieces);

// Pairs an A-side term with a B-side term summing over all leg bijections with their sign.
// Result terms carry no kernel; leg labels are identified and eps gains one per leg.
std::vector<StateTerm> pair_terms(const StateTerm& a, const StateTerm& b, const GluingMatrix& g);

// All pairings between the two lists whose leg counts agree, truncated at eps^maxOrder.
std::vector<StateTerm> pair_states(const std::vector<StateTerm>& sa, const std::vector<StateTerm>& sb,
                                   const GluingMatrix& g, int maxOrder);

// Integrates out the redshirt pair: every z+_2^A is Wick-contracted with a z^{2,B}
// to -eps/p; terms keeping z^{2,A} or z+_2^B vanish; survivors are renamed to glued coordinates.
std::vector<StateTerm> reduce_residuals(const std::vector<StateTerm>& terms, const GluingMatrix& g);

// Closed forms.
Rational two_loop_weight_mt(const GluingMatrix& g, const Rational& e);

enum class NmtVariant { Theorem, SeffEq };
std::string to_string(NmtVariant v);

struct NmtWeight {
  Rational exact;           // e * (MT bracket) plus the rational part of the e' bracket
  HighPrecisionReal real;   // full value including transcendental terms
};

NmtWeight two_loop_weight_nmt(const GluingMatrix& g, const Rational& e, const Rational& ePrime, NmtVariant v);

// Sum_{k=0}^{p-1} ((k/p)) (f(qk/p) + f(mk/p)).
HighPrecisionReal nmt_k_sum(const GluingMatrix& g);

struct EffectiveAction {
  std::vector<StateTerm> cubic;
  Rational twoLoopExact;
  HighPrecisionReal twoLoopReal;
  SplittingClass classUsed = SplittingClass::ManinTriple;
};

// Cubic part from the one-vertex gluing pipeline; constant part from the closed forms.
EffectiveAction assemble_Seff(const LensSpace& lens, const SplitConstants& sc, const std::vector<StateTerm>& cubic,
                              NmtVariant v = NmtVariant::Theorem);

}  // namespace lenstheta
