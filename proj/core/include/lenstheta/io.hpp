#pragma once

#include "lenstheta/algebra.hpp"
#include "lenstheta/gluing.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lenstheta {

// Algebra file (JSON, 0-based indices, rationals as "p/q" strings or integers):
//   { "dim": n,
//     "bracket": [[a, b, c, "p/q"], ...],   c^a_{bc}, unlisted entries zero
//     "form":    [[a, b, "p/q"], ...],      B_{ab}, mirrored to B_{ba}
//     "splitV":  [[x_0, ..., x_{n-1}], ...], optional
//     "splitW":  [[...], ...] }              optional, same count as splitV
struct AlgebraFile {
  QuadraticLieAlgebra algebra;
  std::optional<IsotropicSplitting> split;
};

// Throws InputError on unreadable files, malformed JSON or out-of-range data.
AlgebraFile parse_algebra_json(std::string_view text);
AlgebraFile load_algebra_file(const std::string& path);
std::string algebra_to_json(const AlgebraFile& file);

struct ResultRecord {
  GluingMatrix g;
  SplittingClass cls = SplittingClass::ManinTriple;
  Rational w2Exact;
  double w2Real = 0.0;
  NmtVariant variant = NmtVariant::Theorem;
};

// {"p","q","m","n","class","w2_exact","w2_real","variant"}.
std::string result_to_json(const ResultRecord& r);
// JSON array of records, one per line.
std::string results_to_json(const std::vector<ResultRecord>& rs);

}  // namespace lenstheta
