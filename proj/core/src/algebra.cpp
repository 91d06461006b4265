#include "lenstheta/algebra.hpp"

#include "lenstheta/errors.hpp"

#include <algorithm>
#include <sstream>

namespace lenstheta {

bool Tensor3::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r == 0; });
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw AlgebraError("matrix product shape mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
    }
  return r;
}

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw AlgebraError("determinant of a non-square matrix");
  RationalMatrix a = *this;
  Rational det = 1;
  for (int c = 0; c < cols_; ++c) {
    int piv = c;
    while (piv < rows_ && a(piv, c) == 0) ++piv;
    if (piv == rows_) return 0;
    if (piv != c) {
      for (int j = 0; j < cols_; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < rows_; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (int j = c; j < cols_; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw AlgebraError("inverse of a non-square matrix");
  const int n = rows_;
  RationalMatrix a = *this;
  RationalMatrix inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) throw AlgebraError("matrix is singular");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const Rational d = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= d;
      inv(c, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

SplitConstants SplitConstants::zero(int n) {
  return SplitConstants{n, Tensor3(n), Tensor3(n), Tensor3(n), Tensor3(n)};
}

std::string to_string(SplittingClass c) {
  switch (c) {
    case SplittingClass::ManinTriple: return "ManinTriple";
    case SplittingClass::QuasiManinV: return "QuasiManinV";
    case SplittingClass::QuasiManinW: return "QuasiManinW";
    case SplittingClass::General: return "General";
  }
  return "General";
}

std::string ValidationReport::message() const {
  if (ok) return "pass";
  std::ostringstream os;
  os << "fail: " << identity << " at (";
  for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << indices[i];
  os << ")";
  return os.str();
}

namespace {

ValidationReport failure(std::string identity, std::vector<int> idx) {
  return ValidationReport{false, std::move(identity), std::move(idx)};
}

ValidationReport check_antisymmetry(const Tensor3& c, const std::string& label) {
  const int n = c.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = b; d < n; ++d)
        if (c(a, b, d) != -c(a, d, b)) return failure(label + "antisymmetry", {a, b, d});
  return {};
}

ValidationReport check_jacobi(const Tensor3& c, const std::string& label) {
  const int n = c.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int e = 0; e < n; ++e) {
          Rational s = 0;
          for (int d = 0; d < n; ++d)
            s += c(d, a, b) * c(e, d, cc) + c(d, b, cc) * c(e, d, a) + c(d, cc, a) * c(e, d, b);
          if (s != 0) return failure(label + "Jacobi", {a, b, cc, e});
        }
  return {};
}

RationalVector bracket_vec(const Tensor3& c, const RationalVector& u, const RationalVector& v) {
  const int n = c.size();
  RationalVector r(n);
  for (int b = 0; b < n; ++b) {
    if (u[b] == 0) continue;
    for (int d = 0; d < n; ++d) {
      if (v[d] == 0) continue;
      const Rational uv = u[b] * v[d];
      for (int a = 0; a < n; ++a)
        if (c(a, b, d) != 0) r[a] += c(a, b, d) * uv;
    }
  }
  return r;
}

Rational form_pairing(const RationalMatrix& B, const RationalVector& x, const RationalVector& y) {
  Rational s = 0;
  for (int a = 0; a < B.rows(); ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < B.cols(); ++b)
      if (y[b] != 0) s += x[a] * B(a, b) * y[b];
  }
  return s;
}

}  // namespace

ValidationReport validate_algebra(const QuadraticLieAlgebra& alg) {
  if (alg.dim <= 0 || alg.bracket.size() != alg.dim || alg.form.rows() != alg.dim ||
      alg.form.cols() != alg.dim)
    throw AlgebraError("bracket/form arrays do not match dim " + std::to_string(alg.dim));
  const int n = alg.dim;
  if (auto r = check_antisymmetry(alg.bracket, ""); !r.ok) return r;
  if (auto r = check_jacobi(alg.bracket, ""); !r.ok) return r;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (alg.form(a, b) != alg.form(b, a)) return failure("form symmetry", {a, b});
  if (alg.form.determinant() == 0) return failure("form nondegeneracy", {});
  // T(a,b,c) = sum_d c^d_{ab} B_{dc} must be totally antisymmetric.
  auto T = [&](int a, int b, int c) {
    Rational s = 0;
    for (int d = 0; d < n; ++d) s += alg.bracket(d, a, b) * alg.form(d, c);
    return s;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (T(a, b, c) != -T(a, c, b)) return failure("invariance", {a, b, c});
  return {};
}

ValidationReport validate_splitting(const QuadraticLieAlgebra& alg, const IsotropicSplitting& split) {
  const int n = alg.dim;
  if (n % 2 != 0) return failure("even dimension", {n});
  const int h = n / 2;
  if (static_cast<int>(split.basisV.size()) != h || static_cast<int>(split.basisW.size()) != h)
    return failure("basis size", {static_cast<int>(split.basisV.size()), static_cast<int>(split.basisW.size())});
  for (const auto* basis : {&split.basisV, &split.basisW})
    for (const auto& v : *basis)
      if (static_cast<int>(v.size()) != n) return failure("vector length", {static_cast<int>(v.size())});
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      if (form_pairing(alg.form, split.basisV[i], split.basisV[j]) != 0) return failure("isotropy of V", {i, j});
      if (form_pairing(alg.form, split.basisW[i], split.basisW[j]) != 0) return failure("isotropy of W", {i, j});
      if (form_pairing(alg.form, split.basisV[i], split.basisW[j]) != (i == j ? 1 : 0))
        return failure("duality", {i, j});
    }
  RationalMatrix m(n, n);
  for (int i = 0; i < h; ++i)
    for (int a = 0; a < n; ++a) {
      m(a, i) = split.basisV[i][a];
      m(a, h + i) = split.basisW[i][a];
    }
  if (m.determinant() == 0) return failure("spanning", {});
  return {};
}

Rational structure_pairing(const QuadraticLieAlgebra& alg, const RationalVector& x,
                           const RationalVector& y, const RationalVector& z) {
  return form_pairing(alg.form, x, bracket_vec(alg.bracket, y, z));
}

SplitConstants build_split_constants(const QuadraticLieAlgebra& alg, const IsotropicSplitting& split) {
  if (auto r = validate_splitting(alg, split); !r.ok) throw AlgebraError("invalid splitting: " + r.message());
  const int h = alg.dim / 2;
  SplitConstants sc = SplitConstants::zero(h);
  const auto& V = split.basisV;
  const auto& W = split.basisW;
  for (int j = 0; j < h; ++j)
    for (int k = 0; k < h; ++k) {
      const RationalVector vv = bracket_vec(alg.bracket, V[j], V[k]);
      const RationalVector ww = bracket_vec(alg.bracket, W[j], W[k]);
      for (int i = 0; i < h; ++i) {
        sc.g_low(i, j, k) = form_pairing(alg.form, V[i], vv);
        sc.g_mid(i, j, k) = form_pairing(alg.form, W[i], vv);
        sc.h_mid(i, j, k) = form_pairing(alg.form, V[i], ww);
        sc.h_up(i, j, k) = form_pairing(alg.form, W[i], ww);
      }
    }
  return sc;
}

SplittingClass classify_splitting(const SplitConstants& sc) {
  const bool gz = sc.g_low.is_zero();
  const bool hz = sc.h_up.is_zero();
  if (gz && hz) return SplittingClass::ManinTriple;
  if (gz) return SplittingClass::QuasiManinV;
  if (hz) return SplittingClass::QuasiManinW;
  return SplittingClass::General;
}

ValidationReport validate_bialgebra(const LieBialgebra& b) {
  if (b.bracket.size() != b.dim || b.cobracket.size() != b.dim)
    throw AlgebraError("bialgebra arrays do not match dim " + std::to_string(b.dim));
  if (auto r = check_antisymmetry(b.bracket, "bracket "); !r.ok) return r;
  if (auto r = check_jacobi(b.bracket, "bracket "); !r.ok) return r;
  if (auto r = check_antisymmetry(b.cobracket, "cobracket "); !r.ok) return r;
  if (auto r = check_jacobi(b.cobracket, "cobracket "); !r.ok) return r;
  const int n = b.dim;
  const auto& c = b.bracket;
  const auto& f = b.cobracket;
  // delta([e_a,e_b]) = ad_{e_a} delta(e_b) - ad_{e_b} delta(e_a), componentwise in (j,k).
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Rational lhs = 0, rhs = 0;
          for (int m = 0; m < n; ++m) lhs += c(m, a, bb) * f(m, j, k);
          for (int u = 0; u < n; ++u)
            rhs += c(j, a, u) * f(bb, u, k) + c(k, a, u) * f(bb, j, u) -
                   c(j, bb, u) * f(a, u, k) - c(k, bb, u) * f(a, j, u);
          if (lhs != rhs) return failure("cocycle", {a, bb, j, k});
        }
  return {};
}

std::pair<QuadraticLieAlgebra, IsotropicSplitting> drinfeld_double(const LieBialgebra& b) {
  if (auto r = validate_bialgebra(b); !r.ok) throw AlgebraError("invalid bialgebra: " + r.message());
  const int n = b.dim;
  QuadraticLieAlgebra alg{2 * n, Tensor3(2 * n), RationalMatrix(2 * n, 2 * n)};
  const auto& c = b.bracket;
  const auto& f = b.cobracket;
  const auto up = [n](int i) { return n + i; };
  for (int i = 0; i < n; ++i) {
    alg.form(i, up(i)) = 1;
    alg.form(up(i), i) = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        alg.bracket(k, i, j) = c(k, i, j);
        alg.bracket(up(k), up(i), up(j)) = f(k, i, j);
      }
  // [e_i, e^j] = -c^j_{il} e^l + f^{jl}_i e_l
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        alg.bracket(up(l), i, up(j)) = -c(j, i, l);
        alg.bracket(up(l), up(j), i) = c(j, i, l);
        alg.bracket(l, i, up(j)) = f(i, j, l);
        alg.bracket(l, up(j), i) = -f(i, j, l);
      }
  IsotropicSplitting split;
  for (int i = 0; i < n; ++i) {
    RationalVector v(2 * n), w(2 * n);
    v[i] = 1;
    w[up(i)] = 1;
    split.basisV.push_back(v);
    split.basisW.push_back(w);
  }
  return {alg, split};
}

LieBialgebra two_dim_bialgebra() {
  LieBialgebra b{2, Tensor3(2), Tensor3(2)};
  // x = 0, y = 1
  set_antisymmetric_tail(b.bracket, 1, 0, 1, 1);
  set_antisymmetric_tail(b.cobracket, 1, 0, 1, 1);
  return b;
}

LieBialgebra abelian_bialgebra(int dim) { return LieBialgebra{dim, Tensor3(dim), Tensor3(dim)}; }

Rational coeff_e(const SplitConstants& sc) {
  Rational s = 0;
  const int n = sc.n;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += sc.g_mid(k, i, j) * sc.h_mid(k, i, j);
  return s;
}

Rational coeff_e_prime(const SplitConstants& sc) {
  Rational s = 0;
  const int n = sc.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += sc.g_low(i, j, k) * sc.h_up(i, j, k);
  return s;
}

namespace {

// out(i,j,k) = sum A(a,i) B(b,j) C(c,k) t(a,b,c), with A,B,C given as "column maps".
Tensor3 transform(const Tensor3& t, const RationalMatrix& A, const RationalMatrix& B, const RationalMatrix& C) {
  const int n = t.size();
  Tensor3 s1(n), s2(n), out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int c = 0; c < n; ++c)
          if (t(a, b, c) != 0 && C(c, k) != 0) s1(a, b, k) += C(c, k) * t(a, b, c);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int b = 0; b < n; ++b)
          if (s1(a, b, k) != 0 && B(b, j) != 0) s2(a, j, k) += B(b, j) * s1(a, b, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
          if (s2(a, j, k) != 0 && A(a, i) != 0) out(i, j, k) += A(a, i) * s2(a, j, k);
  return out;
}

RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

}  // namespace

SplitConstants change_split_basis(const SplitConstants& sc, const RationalMatrix& gl) {
  if (gl.rows() != sc.n || gl.cols() != sc.n) throw AlgebraError("basis change has wrong size");
  if (gl.determinant() == 0) throw AlgebraError("basis change is singular");
  // W-slots transform with Ginv(i,a), i.e. column map transpose(Ginv).
  const RationalMatrix G = gl;
  const RationalMatrix Winv = transpose(gl.inverse());
  SplitConstants out;
  out.n = sc.n;
  out.g_low = transform(sc.g_low, G, G, G);
  out.g_mid = transform(sc.g_mid, Winv, G, G);
  out.h_mid = transform(sc.h_mid, G, Winv, Winv);
  out.h_up = transform(sc.h_up, Winv, Winv, Winv);
  return out;
}

void set_antisymmetric(Tensor3& t, int i, int j, int k, const Rational& v) {
  t(i, j, k) = v;
  t(j, k, i) = v;
  t(k, i, j) = v;
  t(j, i, k) = -v;
  t(i, k, j) = -v;
  t(k, j, i) = -v;
}

void set_antisymmetric_tail(Tensor3& t, int i, int j, int k, const Rational& v) {
  t(i, j, k) = v;
  t(i, k, j) = -v;
}

}  // namespace lenstheta
