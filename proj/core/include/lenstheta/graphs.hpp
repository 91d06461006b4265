#pragma once

#include "lenstheta/algebra.hpp"
#include "lenstheta/forms.hpp"
#include "lenstheta/rational.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lenstheta {

// A: state in the A-representation (first solid torus), B: second solid torus,
// Glued: reduced coordinates on the lens space.
enum class Side { A, B, Glued };

// z^1, z^2 (coefficients of the a-field) and z+_1, z+_2 (coefficients of the b-field).
enum class ResidualKind { Z1, Z2, ZPlus1, ZPlus2 };

struct ResidualVar {
  Side side = Side::A;
  ResidualKind kind = ResidualKind::Z1;
  int label = 0;  // Lie index carried by the coordinate
  auto operator<=>(const ResidualVar&) const = default;
};

bool is_odd(const ResidualVar& v);
std::string to_string(const ResidualVar& v);

// g_low(A,A,A), g_mid(B;A,A), h_mid(A;B,B), h_up(B,B,B); slots listed in that order.
enum class TensorKind { GLow, GMid, HMid, HUp };

struct LieTensor {
  TensorKind kind = TensorKind::GMid;
  std::array<int, 3> idx{};
  auto operator<=>(const LieTensor&) const = default;
};

struct LieNetwork {
  std::vector<LieTensor> tensors;

  void rename(int from, int to);
  std::vector<int> labels() const;
  std::string to_string() const;
};

// Sums the network over all values of its labels; `fixed` pins open labels.
Rational evaluate_network(const LieNetwork& net, const SplitConstants& sc,
                          const std::map<int, int>& fixed = {});

// One monomial of an evaluated diagram: coeff * lie * residual * integral(kernel * legs).
struct StateTerm {
  Rational coeff;
  LieNetwork lie;
  std::vector<ResidualVar> residual;
  FormExpr kernel;              // form on the boundary labels in `legs`
  std::vector<int> legs;        // boundary point ids
  std::vector<int> legLabels;   // Lie label of the boundary field at each leg
  int epsPower = 0;
  std::string source;           // diagram name
  int traceLoops = 0;           // closed index loops touching no tensor (each sums to dim/2)

  int count(Side s, ResidualKind k) const;
  std::string to_string() const;
};

// coeff * network * (dim/2)^traceLoops for a term with no residuals and no legs.
Rational evaluate_scalar(const StateTerm& t, const SplitConstants& sc);

struct Edge {
  int tail = 0;
  int head = 0;
};

struct Decoration {
  int vertex = 0;
  char field = 'b';    // 'a' or 'b'
  int component = 0;   // 0 = both components, 1 or 2 = a single one
};

enum class Rep { A, B };

// Bulk vertices are 1..bulk; legs are boundary labels with one incoming edge each.
struct Diagram {
  std::string name;
  int bulk = 0;
  std::vector<int> legs;
  std::vector<Edge> edges;
  std::vector<Decoration> decorations;
  Rational symFactor = 1;
  bool zeroPoint = false;  // the free boundary term: one leg, no bulk vertex
  Rep rep = Rep::A;
  int dualSign = 1;

  int eps_power() const { return static_cast<int>(edges.size()) - bulk - static_cast<int>(legs.size()); }
};

// Literal format, one statement per line:
//   name X | vertices N | edge u->v | dec u a|b|a1|a2|b1|b2 | leg v | factor p/q | zeropoint
Diagram parse_diagram(std::string_view text);
std::string format_diagram(const Diagram& d);

// All connected diagrams needed through two bulk vertices, A-representation.
const std::vector<Diagram>& catalogue();
const Diagram& catalogue_entry(std::string_view name);

// Reverses arrows, swaps a and b decorations, flips the representation and
// records (-1)^{#edges}. An involution.
Diagram dualize(const Diagram& d);

// Evaluates the Feynman rules: residual representatives and horizontal propagators
// are wedged, regularized and pushed forward over all bulk points.
std::vector<StateTerm> evaluate_diagram(const Diagram& d, Rep rep);

// A-representation terms rewritten for the B side: z+ <-> z, g <-> h, sign (-1)^{#edges}.
std::vector<StateTerm> dualize_terms(const std::vector<StateTerm>& terms, int edgeCount);

}  // namespace lenstheta
