#include "lenstheta/torus.hpp"

#include "lenstheta/algebra.hpp"
#include "lenstheta/errors.hpp"
#include "lenstheta/numtheory.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace lenstheta {

namespace {

IntMatrix identity_int(std::size_t n) {
  IntMatrix m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void add_row(IntMatrix& m, std::size_t dst, std::size_t src, long k) {
  for (std::size_t c = 0; c < m[dst].size(); ++c) m[dst][c] += k * m[src][c];
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, long k) {
  for (auto& row : m) row[dst] += k * row[src];
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  SmithForm s{identity_int(rows), identity_int(cols), {}};
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (a[r][c] != 0 && (pr == rows || std::labs(a[r][c]) < std::labs(a[pr][pc]))) {
            pr = r;
            pc = c;
          }
      if (pr == rows) break;
      std::swap(a[t], a[pr]);
      std::swap(s.U[t], s.U[pr]);
      swap_cols(a, t, pc);
      swap_cols(s.W, t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        const long k = a[r][t] / a[t][t];
        add_row(a, r, t, -k);
        add_row(s.U, r, t, -k);
        if (a[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        const long k = a[t][c] / a[t][t];
        add_col(a, c, t, -k);
        add_col(s.W, c, t, -k);
        if (a[t][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[t][t] < 0) {
      for (auto& v : a[t]) v = -v;
      for (auto& v : s.U[t]) v = -v;
    }
    s.diag.push_back(a[t][t]);
  }
  return s;
}

namespace {

struct Linear {
  std::vector<long> alpha;  // coefficients of the free variables
  Rational beta;
};

long vec_gcd(const std::vector<long>& v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, std::labs(x));
  return g;
}

int rank_of(const std::vector<std::vector<long>>& rows) {
  if (rows.empty()) return 0;
  const int n = static_cast<int>(rows[0].size());
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  int rank = 0;
  for (int c = 0; c < n && rank < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
      if (m[r][c] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = rank + 1; r < static_cast<int>(m.size()); ++r) {
      const Rational k = m[r][c] / m[rank][c];
      for (int j = c; j < n; ++j) m[r][j] -= k * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Integral over the free torus of a product of ((alpha . y + beta)).
Rational free_eta_integral(const std::vector<Linear>& etas) {
  Rational constant = 1;
  std::vector<Linear> live;
  for (const auto& l : etas) {
    if (std::all_of(l.alpha.begin(), l.alpha.end(), [](long x) { return x == 0; })) {
      constant *= sawtooth(l.beta);
      if (constant == 0) return 0;
    } else {
      live.push_back(l);
    }
  }
  if (live.empty()) return constant;
  if (live.size() == 1) return 0;
  std::vector<std::vector<long>> rows;
  for (const auto& l : live) rows.push_back(l.alpha);
  const int full = rank_of(rows);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto others = rows;
    others.erase(others.begin() + static_cast<long>(k));
    if (rank_of(others) < full) return 0;
  }
  if (live.size() == 2) {
    // Parallel pair: alpha_k = a_k g with g primitive.
    const long g1 = vec_gcd(live[0].alpha);
    std::vector<long> g = live[0].alpha;
    for (auto& x : g) x /= g1;
    long a1 = g1, a2 = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g[j] != 0) {
        a2 = live[1].alpha[j] / g[j];
        break;
      }
    const long d = std::gcd(std::labs(a1), std::labs(a2));
    a1 /= d;
    a2 /= d;
    const Rational arg = Rational(a2) * live[0].beta - Rational(a1) * live[1].beta;
    return constant * periodic_bernoulli2(arg) / Rational(2 * a1 * a2);
  }
  throw NonEvaluable("product of three or more dependent circle propagators");
}

}  // namespace

Rational integrate_torus(const FormExpr& e, const std::vector<int>& points) {
  const std::size_t dim = 2 * points.size();
  const auto column = [&](const Point& p, bool theta) -> std::size_t {
    if (!p.boundary) throw FormDomainError("torus integrand has a bulk point");
    const auto it = std::find(points.begin(), points.end(), p.id);
    if (it == points.end()) throw NonEvaluable("torus integrand has an unlisted point " + std::to_string(p.id));
    return 2 * static_cast<std::size_t>(it - points.begin()) + (theta ? 1 : 0);
  };
  const auto circle_row = [&](const Factor& f) {
    std::vector<long> row(dim, 0);
    row[column(f.a, false)] += f.dir.t;
    row[column(f.b, false)] -= f.dir.t;
    row[column(f.a, true)] += f.dir.th;
    row[column(f.b, true)] -= f.dir.th;
    return row;
  };

  Rational total = 0;
  for (const auto& [w, c] : e.terms()) {
    if (static_cast<std::size_t>(degree(w)) != dim) continue;
    std::vector<std::vector<long>> forms, deltas, etas;
    for (const auto& f : w) {
      switch (f.sym) {
        case Sym::Dt:
        case Sym::Dtheta: {
          std::vector<long> row(dim, 0);
          row[column(f.a, f.sym == Sym::Dtheta)] = 1;
          forms.push_back(row);
          break;
        }
        case Sym::DeltaC:
          forms.push_back(circle_row(f));
          deltas.push_back(circle_row(f));
          break;
        case Sym::EtaC:
          etas.push_back(circle_row(f));
          break;
        default:
          throw NonEvaluable("torus integrand has a disk factor: " + to_string(f));
      }
    }
    if (forms.size() != dim) continue;
    RationalMatrix m(static_cast<int>(dim), static_cast<int>(dim));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t k = 0; k < dim; ++k) m(static_cast<int>(r), static_cast<int>(k)) = forms[r][k];
    const Rational det = m.determinant();
    if (det == 0) continue;

    std::size_t r = deltas.size();
    std::vector<long> diag;
    IntMatrix wmat = identity_int(dim);
    if (r > 0) {
      SmithForm s = smith_normal_form(deltas);
      diag = s.diag;
      wmat = s.W;
    }
    Rational lattice_weight = 1;
    for (long d : diag) lattice_weight /= d;

    // eta arguments in y = W^{-1} x coordinates.
    std::vector<std::vector<long>> ay;
    for (const auto& a : etas) {
      std::vector<long> row(dim, 0);
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) row[j] += a[k] * wmat[k][j];
      ay.push_back(row);
    }

    Rational sum = 0;
    std::vector<long> idx(r, 0);
    for (;;) {
      std::vector<Linear> lin;
      for (const auto& row : ay) {
        Linear l{std::vector<long>(row.begin() + static_cast<long>(r), row.end()), 0};
        for (std::size_t j = 0; j < r; ++j) l.beta += make_rational(row[j] * idx[j], diag[j]);
        lin.push_back(std::move(l));
      }
      sum += free_eta_integral(lin);
      std::size_t j = 0;
      while (j < r && ++idx[j] == diag[j]) idx[j++] = 0;
      if (j == r) break;
    }
    total += c * det * lattice_weight * sum;
  }
  return total;
}

}  // namespace lenstheta
