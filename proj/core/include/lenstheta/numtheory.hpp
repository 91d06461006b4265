#pragma once

#include "lenstheta/rational.hpp"
#include "lenstheta/real.hpp"

namespace lenstheta {

// ((x)): 0 on integers, x - floor(x) - 1/2 otherwise.
Rational sawtooth(const Rational& x);

// Circle propagator value at a difference argument; ((0)) = 0 on the diagonal.
inline Rational eta_circle(const Rational& x) { return sawtooth(x); }

// Periodic second Bernoulli function {x}^2 - {x} + 1/6.
Rational periodic_bernoulli2(const Rational& x);

// s(q,p) = sum_{k=0}^{p-1} ((k/p)) ((qk/p)), summed term by term.
// Throws InvalidLensData if p < 1 or gcd(q,p) != 1.
Rational dedekind_sum_direct(long q, long p);

// Same value by Euclid-style descent through the reciprocity law, O(log p).
Rational dedekind_sum_fast(long q, long p);

// Right-hand side of the reciprocity law: -1/4 + (p/q + q/p + 1/(pq))/12.
Rational reciprocity_rhs(long p, long q);

// Analytic harmonic number H_x = digamma(x+1) + gamma for x > -1.
HighPrecisionReal harmonic_real(const Rational& x);
HighPrecisionReal harmonic_real(const Real& x);

// cos(2 pi x) ((x)) - sin(2 pi x) log(2|sin(pi x)|) / pi, and 0 on integers.
HighPrecisionReal f_theta(const Rational& x);

Real to_real(const Rational& x);

long gcd(long a, long b);
long mod_floor(long a, long m);

}  // namespace lenstheta
