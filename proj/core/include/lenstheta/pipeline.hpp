#pragma once

#include "lenstheta/algebra.hpp"
#include "lenstheta/gluing.hpp"
#include "lenstheta/graphs.hpp"

#include <string>
#include <vector>

namespace lenstheta {

// One glued product of A-side and B-side diagram terms and its constant contribution.
struct PipelineEntry {
  std::string aSide;
  std::string bSide;
  Rational value;  // contribution to the two-loop constant, Lie coefficient included
};

struct PipelineResult {
  Rational weight;
  std::vector<PipelineEntry> trace;  // nonzero entries only, in enumeration order
};

// Full diagram route: evaluate the catalogue on both sides, glue every product with
// two bulk vertices in total, integrate out the redshirt pair and keep the connected
// eps^1 constants. Needs p > 0.
PipelineResult end_to_end_trace(const GluingMatrix& g, const SplitConstants& sc);

// Same value for a Manin triple; throws AlgebraError for other classes.
Rational end_to_end_weight_mt(const LensSpace& lens, const SplitConstants& sc);

// Coefficient c with Gamma1_2b^A x Gamma1_2b^B = c g^i_{jk} h_l^{jk} z+_{2i}^A z^{2l,B} (unreduced).
Rational psi12_pairing_coefficient(const GluingMatrix& g);

// Coefficient c with Gamma0^A x Gamma0^B = c z+_{2k}^A z^{2k,B}.
Rational gamma0_pairing_coefficient(const GluingMatrix& g);

// Cubic (one-vertex) part of the reduced effective action, terms with three glued coordinates.
std::vector<StateTerm> cubic_effective_terms(const GluingMatrix& g);

}  // namespace lenstheta
