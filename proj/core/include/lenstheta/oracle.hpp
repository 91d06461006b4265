#pragma once

#include "lenstheta/forms.hpp"
#include "lenstheta/gluing.hpp"
#include "lenstheta/real.hpp"

#include <string>
#include <vector>

namespace lenstheta {

// Slow, independent numerical routes. Nothing in the exact pipeline calls these.

enum class SmearingKernel { Fejer, Gaussian };

struct QuadratureSpec {
  long gridSize = 0;   // N, points per circle
  double width = 0.0;  // nascent-delta scale; 0 picks two grid steps along the steepest delta
  SmearingKernel kernel = SmearingKernel::Gaussian;

  // Checks N >= 8 and, for an explicit width, width >= 1/N; throws DomainError.
  static QuadratureSpec make(long n, double width = 0.0, SmearingKernel k = SmearingKernel::Gaussian);
};

// sum_k ((k/p)) ((qk/p)) in double precision.
double dedekind_numeric(long q, long p);

// H_x = int_0^1 (1 - t^x)/(1 - t) dt by tanh-sinh; x > 0.
HighPrecisionReal harmonic_integral(const Real& x, double tol = 1e-20);

// Two-point boundary kernel Dt(y) * delta(delta . (x - y)) * eta(eta . (x - y)).
struct DeltaEtaKernel {
  Dir delta = kAlongT;
  Dir eta = kAlongTheta;
};

// Riemann sum on an N x N grid of the torus pairing of an A-side kernel with the
// pullback of a B-side kernel, deltas replaced by periodic nascent deltas.
// N must be a multiple of p (p > 0). Neighbourhoods of lattice points where an eta
// argument is an integer are excised, matching eta(0) = 0.
HighPrecisionReal circle_pairing_numeric(const DeltaEtaKernel& a, const DeltaEtaKernel& b, const GluingMatrix& g,
                                         const QuadratureSpec& spec);

struct ReciprocityReport {
  bool ok = true;
  long pairsChecked = 0;
  long failP = 0, failQ = 0;
};

// s(p,q) + s(q,p) = reciprocity_rhs(p,q) over coprime 1 <= p, q <= pmax, with the fast sum.
ReciprocityReport reciprocity_check(long pmax);

}  // namespace lenstheta
