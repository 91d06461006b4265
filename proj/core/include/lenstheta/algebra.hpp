#pragma once

#include "lenstheta/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lenstheta {

// Dense rank-3 array of rationals, 0-based indices.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n) {}

  int size() const { return n_; }
  Rational& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const Rational& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  bool is_zero() const;
  bool operator==(const Tensor3&) const = default;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_ = 0;
  std::vector<Rational> data_;
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  bool operator==(const RationalMatrix&) const = default;

  Rational determinant() const;
  // Throws AlgebraError when singular.
  RationalMatrix inverse() const;
  RationalMatrix operator*(const RationalMatrix& o) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

using RationalVector = std::vector<Rational>;

struct QuadraticLieAlgebra {
  int dim = 0;
  Tensor3 bracket;        // bracket(a,b,c) = c^a_{bc}
  RationalMatrix form;    // B_{ab}
};

struct IsotropicSplitting {
  std::vector<RationalVector> basisV;  // xi_i
  std::vector<RationalVector> basisW;  // xi^i
};

// Index convention: g_low(i,j,k) = g_{ijk}, g_mid(i,j,k) = g^i_{jk},
// h_mid(i,j,k) = h_i^{jk}, h_up(i,j,k) = h^{ijk}.
struct SplitConstants {
  int n = 0;  // dim / 2
  Tensor3 g_low, g_mid, h_mid, h_up;

  static SplitConstants zero(int n);
  bool operator==(const SplitConstants&) const = default;
};

enum class SplittingClass { ManinTriple, QuasiManinV, QuasiManinW, General };
std::string to_string(SplittingClass c);

struct LieBialgebra {
  int dim = 0;
  Tensor3 bracket;    // bracket(k,i,j) = c^k_{ij}:  [e_i, e_j] = c^k_{ij} e_k
  Tensor3 cobracket;  // cobracket(k,i,j) = f^{ij}_k: [e^i, e^j] = f^{ij}_k e^k
};

struct ValidationReport {
  bool ok = true;
  std::string identity;      // empty when ok
  std::vector<int> indices;  // offending index tuple
  std::string message() const;
};

ValidationReport validate_algebra(const QuadraticLieAlgebra& alg);
ValidationReport validate_splitting(const QuadraticLieAlgebra& alg, const IsotropicSplitting& split);
ValidationReport validate_bialgebra(const LieBialgebra& b);

// <x,[y,z]> in ambient coordinates.
Rational structure_pairing(const QuadraticLieAlgebra& alg, const RationalVector& x,
                           const RationalVector& y, const RationalVector& z);

SplitConstants build_split_constants(const QuadraticLieAlgebra& alg, const IsotropicSplitting& split);
SplittingClass classify_splitting(const SplitConstants& sc);

// Ambient basis is (e_1..e_n, e^1..e^n) with the canonical pairing; V = span e_i, W = span e^i.
std::pair<QuadraticLieAlgebra, IsotropicSplitting> drinfeld_double(const LieBialgebra& b);

// span(x,y) with [x,y] = y and [x*,y*] = y*.
LieBialgebra two_dim_bialgebra();
LieBialgebra abelian_bialgebra(int dim);

Rational coeff_e(const SplitConstants& sc);
Rational coeff_e_prime(const SplitConstants& sc);

// xi'_i = sum_a gl(a,i) xi_a,  xi'^i = sum_a gl^{-1}(i,a) xi^a.
SplitConstants change_split_basis(const SplitConstants& sc, const RationalMatrix& gl);

// Totally antisymmetric tensor with t(i,j,k) = value on the ordered triple and its signed permutations.
void set_antisymmetric(Tensor3& t, int i, int j, int k, const Rational& value);
// Antisymmetric in the last two slots.
void set_antisymmetric_tail(Tensor3& t, int i, int j, int k, const Rational& value);

}  // namespace lenstheta
