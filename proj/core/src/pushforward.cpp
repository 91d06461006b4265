// Fiber integration over one point of S^1 x D (bulk) or of the boundary torus.
#include "lenstheta/errors.hpp"
#include "lenstheta/forms.hpp"

#include <algorithm>

namespace lenstheta {

namespace {

bool is_circle(Sym s) { return s == Sym::Dt || s == Sym::Dtheta || s == Sym::DeltaC || s == Sym::EtaC; }

bool two_point(Sym s) { return s == Sym::EtaC || s == Sym::DeltaC || s == Sym::EtaD || s == Sym::DeltaD; }

Factor substitute(Factor f, int from, Point to) {
  if (f.a.id == from) f.a = to;
  if (two_point(f.sym) && f.b.id == from) f.b = to;
  return f;
}

Point other_end(const Factor& f, int id) { return f.a.id == id ? f.b : f.a; }

// Sign of the stable reordering that sorts the word by group label.
int group_sign(const Word& w, const std::vector<int>& group) {
  int sign = 1;
  for (std::size_t j = 0; j < w.size(); ++j)
    for (std::size_t k = j + 1; k < w.size(); ++k)
      if (group[j] > group[k] && w[j].odd() && w[k].odd()) sign = -sign;
  return sign;
}

// Sign for moving w[pos] to the end of w.
int move_to_end_sign(const Word& w, std::size_t pos) {
  int sign = 1;
  if (!w[pos].odd()) return sign;
  for (std::size_t k = pos + 1; k < w.size(); ++k)
    if (w[k].odd()) sign = -sign;
  return sign;
}

std::string describe(const Word& w) {
  std::string s;
  for (const auto& f : w) s += (s.empty() ? "" : " * ") + to_string(f);
  return s.empty() ? "1" : s;
}

// Integral of ((u))^k over the circle.
Rational sawtooth_power_integral(int k) {
  if (k % 2 != 0) return 0;
  Rational r(1, k + 1);
  for (int j = 0; j < k; ++j) r /= 2;
  return r;
}

// Integrates a product of circle factors over the circle coordinate at point i
// selected by `along` (t or theta), fiber form on the right.
FormExpr integrate_circle(const Word& c, Point i, Dir along) {
  const Sym coord = along == kAlongT ? Sym::Dt : Sym::Dtheta;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k].sym != Sym::DeltaC) continue;
    if (c[k].dir != along) throw NonEvaluable("delta off the fiber axis: " + describe(c));
    int sign = move_to_end_sign(c, k);
    if (c[k].b.id == i.id) sign = -sign;
    const Point x = other_end(c[k], i.id);
    Word rest;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (j != k) rest.push_back(substitute(c[j], i.id, x));
    return FormExpr::term(sign, std::move(rest));
  }
  const auto vol = std::find_if(c.begin(), c.end(), [&](const Factor& f) { return f.sym == coord; });
  if (vol == c.end()) return {};
  const int sign = move_to_end_sign(c, static_cast<std::size_t>(vol - c.begin()));
  std::vector<Point> ends;
  for (const auto& f : c) {
    if (f.sym == coord) continue;
    if (f.sym != Sym::EtaC || f.dir != along) throw NonEvaluable("circle integrand outside the family: " + describe(c));
    ends.push_back(other_end(f, i.id));
  }
  if (ends.empty()) return FormExpr::constant(sign);
  if (std::any_of(ends.begin(), ends.end(), [&](Point p) { return p != ends.front(); }))
    throw NonEvaluable("circle propagators to distinct points: " + describe(c));
  return FormExpr::constant(sign * sawtooth_power_integral(static_cast<int>(ends.size())));
}

// Integrates a product of disk factors over the disk at bulk point i, area form on the right.
FormExpr integrate_disk(const Word& d, Point i) {
  int max_degree = 0;
  for (const auto& f : d) max_degree += (f.sym == Sym::Mu || f.sym == Sym::DeltaD) ? 2 : 1;
  if (max_degree < 2) return {};

  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k].sym != Sym::DeltaD) continue;
    const Point x = other_end(d[k], i.id);
    Word rest;
    for (std::size_t j = 0; j < d.size(); ++j)
      if (j != k) rest.push_back(substitute(d[j], i.id, x));
    return FormExpr::term(1, std::move(rest));
  }

  bool mu = false;
  bool psi = false;
  std::vector<std::size_t> heads, tails;
  for (std::size_t k = 0; k < d.size(); ++k) {
    switch (d[k].sym) {
      case Sym::Mu: mu = true; break;
      case Sym::Psi: psi = true; break;
      case Sym::EtaD: (d[k].a.id == i.id ? tails : heads).push_back(k); break;
      default: throw NonEvaluable("unexpected disk factor: " + describe(d));
    }
  }

  if (mu) {
    if (!heads.empty()) return {};
    Word out;
    int bulk_tails = 0;
    for (std::size_t k : tails) {
      const Point x = d[k].b;
      if (x.boundary) {
        out.push_back(Factor::dtheta(x));
      } else {
        ++bulk_tails;
        out.push_back(Factor::psi(x));
      }
    }
    if (bulk_tails > 1) throw NonEvaluable("area form with several bulk tails: " + describe(d));
    return FormExpr::term(1, std::move(out));
  }
  if (psi) {
    if (!heads.empty() && tails.empty()) return {};
    throw NonEvaluable("boundary one-form against propagator tails: " + describe(d));
  }
  if (heads.size() == 1 && tails.size() == 1) return {};
  if (heads.empty() && tails.size() >= 2 &&
      std::all_of(tails.begin(), tails.end(), [&](std::size_t k) { return d[k].b.boundary; })) {
    // Two tails ending on the boundary integrate to the circle propagator in theta;
    // every other tail keeps its boundary value dtheta.
    FormExpr r;
    const std::size_t n = tails.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        Word w;
        for (std::size_t j = 0; j < n; ++j)
          if (j != a && j != b) w.push_back(Factor::dtheta(d[tails[j]].b));
        w.push_back(Factor::eta_c(d[tails[a]].b, d[tails[b]].b, kAlongTheta));
        const int sign = ((n - 1 - b) + (n - 2 - a)) % 2 == 0 ? 1 : -1;
        r.add_word(sign, std::move(w));
      }
    return r;
  }
  throw NonEvaluable("disk integrand outside the family: " + describe(d));
}

}  // namespace

FormExpr pushforward_bulk(const FormExpr& e, Point i) {
  if (i.boundary) throw FormDomainError("pushforward_bulk needs a bulk point");
  FormExpr out;
  for (const auto& [w, c] : e.terms()) {
    Word n, circle, disk;
    std::vector<int> group;
    for (const auto& f : w) {
      if (!f.involves(i.id)) {
        group.push_back(0);
      } else {
        group.push_back(is_circle(f.sym) ? 1 : 2);
      }
    }
    for (std::size_t k = 0; k < w.size(); ++k) (group[k] == 0 ? n : group[k] == 1 ? circle : disk).push_back(w[k]);
    const int circle_odd = static_cast<int>(std::count_if(circle.begin(), circle.end(), [](const Factor& f) { return f.odd(); }));
    if (circle_odd == 0) continue;
    FormExpr dpart = integrate_disk(disk, i);
    if (dpart.is_zero()) continue;
    FormExpr cpart = integrate_circle(circle, i, kAlongT);
    if (cpart.is_zero()) continue;
    int sign = group_sign(w, group);
    if (degree(disk) % 2 != 0) sign = -sign;
    out += (sign * c) * wedge(wedge(FormExpr::term(1, n), cpart), dpart);
  }
  return out;
}

FormExpr pushforward_boundary(const FormExpr& e, Point b) {
  if (!b.boundary) throw FormDomainError("pushforward_boundary needs a boundary point");
  // Heads on the boundary: eta_D(z, b) = dtheta_b - psi(z).
  FormExpr expanded;
  for (const auto& [w, c] : e.terms()) {
    FormExpr t = FormExpr::constant(c);
    for (const auto& f : w) {
      if (f.sym == Sym::EtaD && f.b.id == b.id) {
        t = wedge(t, FormExpr::factor(Factor::dtheta(b)) - FormExpr::factor(Factor::psi(f.a)));
      } else if (f.sym == Sym::EtaD && f.a.id == b.id) {
        throw NonEvaluable("disk propagator with its tail on the boundary: " + describe(w));
      } else {
        t = wedge(t, FormExpr::factor(f));
      }
    }
    expanded += t;
  }

  FormExpr out;
  for (const auto& [w, c] : expanded.terms()) {
    Word n, tpart, thpart;
    std::vector<int> group;
    for (const auto& f : w) {
      int g = 0;
      if (f.involves(b.id)) {
        if (f.sym == Sym::Dt || ((f.sym == Sym::DeltaC || f.sym == Sym::EtaC) && f.dir == kAlongT)) {
          g = 1;
        } else if (f.sym == Sym::Dtheta || ((f.sym == Sym::DeltaC || f.sym == Sym::EtaC) && f.dir == kAlongTheta)) {
          g = 2;
        } else {
          throw NonEvaluable("boundary integrand outside the family: " + describe(w));
        }
      }
      group.push_back(g);
    }
    for (std::size_t k = 0; k < w.size(); ++k) (group[k] == 0 ? n : group[k] == 1 ? tpart : thpart).push_back(w[k]);
    FormExpr cth = integrate_circle(thpart, b, kAlongTheta);
    if (cth.is_zero()) continue;
    FormExpr ct = integrate_circle(tpart, b, kAlongT);
    if (ct.is_zero()) continue;
    int sign = group_sign(w, group);
    if (degree(thpart) % 2 == 0) sign = -sign;
    out += (sign * c) * wedge(wedge(FormExpr::term(1, n), ct), cth);
  }
  return out;
}

FormExpr pushforward_bulk_all(const FormExpr& e, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end(), std::greater<>());
  FormExpr r = e;
  for (int id : ids) {
    r = pushforward_bulk(r, bulk(id));
    if (r.is_zero()) break;
  }
  return r;
}

}  // namespace lenstheta
