#pragma once

#include "lenstheta/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lenstheta {

struct Point {
  int id = 0;
  bool boundary = false;
  auto operator<=>(const Point&) const = default;
};

inline Point bulk(int id) { return {id, false}; }
inline Point bdry(int id) { return {id, true}; }

// Circle argument a (t_x - t_y) + b (theta_x - theta_y).
struct Dir {
  int t = 1;
  int th = 0;
  auto operator<=>(const Dir&) const = default;
  bool is_zero() const { return t == 0 && th == 0; }
};

inline constexpr Dir kAlongT{1, 0};
inline constexpr Dir kAlongTheta{0, 1};

// Declaration order is the canonical rank: disk factors first, then circle factors.
enum class Sym : std::uint8_t { Mu, Psi, EtaD, DeltaD, Dt, Dtheta, DeltaC, EtaC };

struct Factor {
  Sym sym = Sym::Dt;
  Point a;
  Point b;
  Dir dir;

  int degree() const;
  bool odd() const { return degree() % 2 != 0; }
  bool involves(int id) const;
  auto operator<=>(const Factor&) const = default;

  static Factor dt(Point p) { return {Sym::Dt, p, {}, {}}; }
  static Factor dtheta(Point p) { return {Sym::Dtheta, p, {}, {}}; }
  static Factor mu(Point p) { return {Sym::Mu, p, {}, {}}; }
  static Factor psi(Point p) { return {Sym::Psi, p, {}, {}}; }
  static Factor eta_c(Point x, Point y, Dir d = kAlongT) { return {Sym::EtaC, x, y, d}; }
  static Factor delta_c(Point x, Point y, Dir d = kAlongT) { return {Sym::DeltaC, x, y, d}; }
  static Factor eta_d(Point x, Point y) { return {Sym::EtaD, x, y, {}}; }
  static Factor delta_d(Point x, Point y) { return {Sym::DeltaD, x, y, {}}; }
};

std::string to_string(const Factor& f);

using Word = std::vector<Factor>;

// Finite sum of coefficient * ordered product of factors, always in normal form:
// factors canonicalized, sorted by rank with Koszul signs, nilpotent words removed.
class FormExpr {
 public:
  using TermMap = std::map<Word, Rational>;

  FormExpr() = default;
  static FormExpr constant(const Rational& c);
  static FormExpr one() { return constant(1); }
  static FormExpr factor(const Factor& f);
  static FormExpr term(const Rational& c, Word w);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Degree-homogeneous part selection and scalar extraction.
  Rational constant_term() const;

  FormExpr& operator+=(const FormExpr& o);
  FormExpr& operator-=(const FormExpr& o);
  FormExpr& operator*=(const Rational& c);
  friend FormExpr operator+(FormExpr a, const FormExpr& b) { return a += b; }
  friend FormExpr operator-(FormExpr a, const FormExpr& b) { return a -= b; }
  friend FormExpr operator*(const Rational& c, FormExpr a) { return a *= c; }
  friend FormExpr operator-(FormExpr a) { return a *= -1; }
  bool operator==(const FormExpr& o) const { return terms_ == o.terms_; }

  // One term per line: "coeff * factor * factor"; zero prints as "0".
  std::string dump() const;

  // Adds c * w after normalizing w (internal building block).
  void add_word(const Rational& c, Word w);

 private:
  TermMap terms_;
};

int degree(const Word& w);

FormExpr wedge(const FormExpr& a, const FormExpr& b);
FormExpr wedge_all(const std::vector<FormExpr>& factors);

enum class PropagatorKind { Horizontal, Axial };
FormExpr propagator(PropagatorKind kind, Point i, Point j);

FormExpr differential(const FormExpr& e);

// delta*eta on the same circle pair -> 0, DeltaD^2 -> 0; idempotent.
FormExpr regularize(const FormExpr& e);

// Integrate out a bulk point (fiber S^1 x D, orientation dt ^ mu, fiber on the right).
FormExpr pushforward_bulk(const FormExpr& e, Point i);
// Integrate out a boundary point (fiber T^2, orientation dt ^ dtheta, fiber on the right).
FormExpr pushforward_boundary(const FormExpr& e, Point b);
// Integrates the given bulk points, highest id first.
FormExpr pushforward_bulk_all(const FormExpr& e, std::vector<int> ids);

// Re-tags a bulk label as a boundary label.
FormExpr restrict_boundary(const FormExpr& e, Point i);

// Renames boundary or bulk ids; ids not in the map are kept.
FormExpr relabel(const FormExpr& e, const std::map<int, int>& ids);

// Parses the dump format. Points are written "3" (bulk) or "b3" (boundary);
// circle factors take an optional direction "EtaC(b1,b2;0,1)".
FormExpr parse_form(std::string_view text);

}  // namespace lenstheta
