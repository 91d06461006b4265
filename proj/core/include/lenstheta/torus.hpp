#pragma once

#include "lenstheta/forms.hpp"
#include "lenstheta/rational.hpp"

#include <vector>

namespace lenstheta {

using IntMatrix = std::vector<std::vector<long>>;

// U * A * W = D with U, W unimodular and D diagonal with nonnegative entries.
struct SmithForm {
  IntMatrix U;
  IntMatrix W;
  std::vector<long> diag;  // min(rows, cols) entries
};

SmithForm smith_normal_form(const IntMatrix& a);

// Integral over (T^2)^n of a form on the boundary labels `points`,
// orientation dt_1 dtheta_1 ... dt_n dtheta_n in the listed order.
// Delta factors are resolved on their lattice of solutions, circle
// propagators by exact lattice sums. Throws NonEvaluable outside that family.
Rational integrate_torus(const FormExpr& e, const std::vector<int>& points);

}  // namespace lenstheta
