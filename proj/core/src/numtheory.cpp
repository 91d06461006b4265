#include "lenstheta/numtheory.hpp"

#include "lenstheta/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace lenstheta {

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

long gcd(long a, long b) { return std::gcd(a, b); }

long mod_floor(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

Rational sawtooth(const Rational& x) {
  if (is_integer(x)) return 0;
  Rational r = x - Rational(floor(x)) - make_rational(1, 2);
  r.canonicalize();
  return r;
}

Rational periodic_bernoulli2(const Rational& x) {
  Rational frac = x - Rational(floor(x));
  Rational r = frac * frac - frac + make_rational(1, 6);
  r.canonicalize();
  return r;
}

namespace {

void check_lens_pair(long q, long p) {
  if (p < 1) throw InvalidLensData("Dedekind sum needs p >= 1, got p = " + std::to_string(p));
  if (std::gcd(q, p) != 1)
    throw InvalidLensData("gcd(" + std::to_string(q) + ", " + std::to_string(p) + ") != 1");
}

}  // namespace

Rational dedekind_sum_direct(long q, long p) {
  check_lens_pair(q, p);
  // ((k/p)) = (2k - p)/(2p) for 0 < k < p, so 4p^2 s(q,p) is an integer sum.
  std::int64_t acc = 0;
  const long qr = mod_floor(q, p);
  long r = 0;
  for (long k = 1; k < p; ++k) {
    r += qr;
    if (r >= p) r -= p;
    if (r == 0) continue;
    acc += static_cast<std::int64_t>(2 * k - p) * (2 * r - p);
  }
  Rational s(Integer(static_cast<long>(acc)), Integer(4) * p * p);
  s.canonicalize();
  return s;
}

Rational reciprocity_rhs(long p, long q) {
  Rational r = make_rational(-1, 4) +
               (make_rational(p, q) + make_rational(q, p) + make_rational(1, p * q)) / 12;
  r.canonicalize();
  return r;
}

Rational dedekind_sum_fast(long q, long p) {
  check_lens_pair(q, p);
  long h = mod_floor(q, p);
  long k = p;
  Rational acc = 0;
  int sign = 1;
  while (h != 0) {
    // s(h,k) = -s(k mod h, h) + rhs(h,k)
    Rational term = reciprocity_rhs(h, k);
    if (sign > 0) acc += term; else acc -= term;
    sign = -sign;
    long next = k % h;
    k = h;
    h = next;
  }
  acc.canonicalize();
  return acc;
}

namespace {

Real digamma_positive(Real z) {
  Real shift = 0;
  while (z < 40) {
    shift += 1 / z;
    z += 1;
  }
  using boost::multiprecision::log;
  Real sum = log(z) - 1 / (2 * z);
  const Real inv2 = 1 / (z * z);
  Real pw = inv2;
  for (int k = 1; k <= 24; ++k) {
    sum -= boost::math::bernoulli_b2n<Real>(k) / (2 * k) * pw;
    pw *= inv2;
  }
  return sum - shift;
}

}  // namespace

HighPrecisionReal harmonic_real(const Real& x) {
  if (!(x > -1)) throw DomainError("harmonic_real needs x > -1, got " + to_string(x));
  const Real gamma = boost::math::constants::euler<Real>();
  return {digamma_positive(x + 1) + gamma, 1e-40};
}

HighPrecisionReal harmonic_real(const Rational& x) {
  if (x <= -1) throw DomainError("harmonic_real needs x > -1, got " + to_string(x));
  if (is_integer(x) && x >= 0 && x <= 10000) {
    Real h = 0;
    for (long k = 1; k <= x.get_num().get_si(); ++k) h += Real(1) / k;
    return {h, 1e-40};
  }
  Real xr = Real(x.get_num().get_str()) / Real(x.get_den().get_str());
  return harmonic_real(xr);
}

Real to_real(const Rational& x) {
  return Real(x.get_num().get_str()) / Real(x.get_den().get_str());
}

HighPrecisionReal f_theta(const Rational& x) {
  if (is_integer(x)) return {0, 0.0};
  using boost::multiprecision::cos;
  using boost::multiprecision::log;
  using boost::multiprecision::sin;
  using boost::multiprecision::abs;
  const Rational frac = x - Rational(floor(x));
  const Real th = to_real(frac);
  const Real pi = boost::math::constants::pi<Real>();
  const Rational saw = sawtooth(frac);
  const Real sawr = to_real(saw);
  Real v = cos(2 * pi * th) * sawr - sin(2 * pi * th) * log(2 * abs(sin(pi * th))) / pi;
  return {v, 1e-40};
}

}  // namespace lenstheta
