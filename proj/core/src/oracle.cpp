#include "lenstheta/oracle.hpp"

#include "lenstheta/algebra.hpp"
#include "lenstheta/errors.hpp"
#include "lenstheta/numtheory.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace lenstheta {

QuadratureSpec QuadratureSpec::make(long n, double width, SmearingKernel k) {
  if (n < 8) throw DomainError("quadrature grid needs N >= 8, got " + std::to_string(n));
  if (width != 0.0 && width * static_cast<double>(n) < 1.0 - 1e-12)
    throw DomainError("smearing width " + std::to_string(width) + " is below the grid spacing 1/" + std::to_string(n));
  return {n, width, k};
}

namespace {

double saw(double x) {
  const double f = x - std::floor(x);
  if (f < 1e-13 || f > 1 - 1e-13) return 0.0;
  return f - 0.5;
}

double dist_to_int(double x) { return std::abs(x - std::round(x)); }

class NascentDelta {
 public:
  NascentDelta(SmearingKernel k, double w) : kernel_(k), w_(w), m_(std::max(1L, std::lround(1.0 / w))) {}

  double operator()(double s) const {
    s -= std::round(s);
    if (kernel_ == SmearingKernel::Gaussian) {
      const double c = 1.0 / (std::sqrt(2.0 * boost::math::constants::pi<double>()) * w_);
      double v = 0;
      for (int k = -2; k <= 2; ++k) v += std::exp(-(s - k) * (s - k) / (2 * w_ * w_));
      return c * v;
    }
    const double pi = boost::math::constants::pi<double>();
    const double den = std::sin(pi * s);
    if (std::abs(den) < 1e-14) return static_cast<double>(m_);
    const double num = std::sin(pi * static_cast<double>(m_) * s);
    return num * num / (den * den * static_cast<double>(m_));
  }

  double support() const { return kernel_ == SmearingKernel::Gaussian ? 8 * w_ : 4 * w_; }

 private:
  SmearingKernel kernel_;
  double w_;
  long m_;
};

Dir pull(const Dir& d, const GluingMatrix& g) {
  return {static_cast<int>(d.t * g.m + d.th * g.n), static_cast<int>(d.t * g.p + d.th * g.q)};
}

}  // namespace

double dedekind_numeric(long q, long p) {
  if (p < 1 || std::gcd(q, p) != 1) throw InvalidLensData("dedekind_numeric needs coprime (q,p) with p >= 1");
  double s = 0;
  for (long k = 0; k < p; ++k) s += saw(static_cast<double>(k) / p) * saw(static_cast<double>(mod_floor(q * k, p)) / p);
  return s;
}

HighPrecisionReal harmonic_integral(const Real& x, double tol) {
  if (!(x > 0)) throw DomainError("harmonic_integral needs x > 0");
  boost::math::quadrature::tanh_sinh<Real> integrator;
  using boost::multiprecision::pow;
  const auto f = [&](const Real& t) -> Real {
    if (t >= 1) return x;
    return (1 - pow(t, x)) / (1 - t);
  };
  Real err = 0;
  const Real v = integrator.integrate(f, Real(0), Real(1), Real(tol), &err);
  if (err > tol) throw ConvergenceError("harmonic_integral error estimate " + to_string(err, 6) + " above tolerance");
  return {v, static_cast<double>(err)};
}

HighPrecisionReal circle_pairing_numeric(const DeltaEtaKernel& a, const DeltaEtaKernel& b, const GluingMatrix& g,
                                         const QuadratureSpec& spec) {
  if (g.p <= 0) throw InvalidLensData("circle_pairing_numeric needs p > 0");
  if (spec.gridSize % g.p != 0) throw DomainError("grid size must be a multiple of p");
  const Dir db = pull(b.delta, g), eb = pull(b.eta, g);

  // Columns (t_x, th_x, t_y, th_y); rows Dt(y), delta_A, pullback of Dt(y), delta_B.
  RationalMatrix m(4, 4);
  const std::array<std::array<long, 4>, 4> rows{{{0, 0, 1, 0},
                                                 {a.delta.t, a.delta.th, -a.delta.t, -a.delta.th},
                                                 {0, 0, g.m, g.p},
                                                 {db.t, db.th, -db.t, -db.th}}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  const double det = m.determinant().get_d();
  if (det == 0) return {0, 0.0};

  // Auto width: two grid steps along the steepest delta argument.
  const long steep = std::max({std::abs(a.delta.t), std::abs(a.delta.th), std::abs(db.t), std::abs(db.th)});
  const long n = spec.gridSize;
  const double width = spec.width > 0 ? spec.width : 2.0 * static_cast<double>(steep) / static_cast<double>(n);
  const NascentDelta delta(spec.kernel, width);
  const double cut = delta.support();
  // Lattice point nearest to u: solve [delta_A; delta_B] u = (ka, kb).
  const double d2 = static_cast<double>(a.delta.t) * db.th - static_cast<double>(a.delta.th) * db.t;
  const auto eta_integral_at = [&](double ka, double kb) {
    const double lt = (ka * db.th - kb * a.delta.th) / d2;
    const double lth = (kb * a.delta.t - ka * db.t) / d2;
    return dist_to_int(a.eta.t * lt + a.eta.th * lth) < 1e-9 || dist_to_int(eb.t * lt + eb.th * lth) < 1e-9;
  };
  double sum = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      const double ut = static_cast<double>(i) / n, uth = static_cast<double>(j) / n;
      const double sa = a.delta.t * ut + a.delta.th * uth;
      const double sb = db.t * ut + db.th * uth;
      if (dist_to_int(sa) < cut && dist_to_int(sb) < cut && eta_integral_at(std::round(sa), std::round(sb))) continue;
      sum += delta(sa) * delta(sb) * saw(a.eta.t * ut + a.eta.th * uth) * saw(eb.t * ut + eb.th * uth);
    }
  return {Real(det * sum / static_cast<double>(n * n)), 0.0};
}

ReciprocityReport reciprocity_check(long pmax) {
  ReciprocityReport r;
  for (long p = 1; p <= pmax; ++p)
    for (long q = 1; q <= pmax; ++q) {
      if (std::gcd(p, q) != 1) continue;
      ++r.pairsChecked;
      if (dedekind_sum_fast(p, q) + dedekind_sum_fast(q, p) != reciprocity_rhs(p, q)) {
        r.ok = false;
        r.failP = p;
        r.failQ = q;
        return r;
      }
    }
  return r;
}

}  // namespace lenstheta
