#include "lenstheta/forms.hpp"

#include "lenstheta/errors.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace lenstheta {

int Factor::degree() const {
  switch (sym) {
    case Sym::Mu:
    case Sym::DeltaD: return 2;
    case Sym::EtaC: return 0;
    default: return 1;
  }
}

bool Factor::involves(int id) const {
  switch (sym) {
    case Sym::EtaC:
    case Sym::DeltaC:
    case Sym::EtaD:
    case Sym::DeltaD: return a.id == id || b.id == id;
    default: return a.id == id;
  }
}

namespace {

std::string point_str(Point p) { return (p.boundary ? "b" : "") + std::to_string(p.id); }

const char* sym_name(Sym s) {
  switch (s) {
    case Sym::Mu: return "Mu";
    case Sym::Psi: return "Psi";
    case Sym::EtaD: return "EtaD";
    case Sym::DeltaD: return "DeltaD";
    case Sym::Dt: return "Dt";
    case Sym::Dtheta: return "Dtheta";
    case Sym::DeltaC: return "DeltaC";
    case Sym::EtaC: return "EtaC";
  }
  return "?";
}

bool two_point(Sym s) { return s == Sym::EtaC || s == Sym::DeltaC || s == Sym::EtaD || s == Sym::DeltaD; }

struct Canon {
  int sign = 1;
  Factor f;
};

// Canonical representative of a single factor, or nullopt when it vanishes identically.
std::optional<Canon> canonical(Factor f) {
  switch (f.sym) {
    case Sym::Dt:
      return Canon{1, Factor::dt(f.a)};
    case Sym::Dtheta:
      if (!f.a.boundary) throw FormDomainError("Dtheta at bulk point " + point_str(f.a));
      return Canon{1, Factor::dtheta(f.a)};
    case Sym::Mu:
      if (f.a.boundary) throw FormDomainError("Mu at boundary point " + point_str(f.a));
      return Canon{1, Factor::mu(f.a)};
    case Sym::Psi:
      if (f.a.boundary) return Canon{1, Factor::dtheta(f.a)};
      return Canon{1, Factor::psi(f.a)};
    case Sym::EtaC:
    case Sym::DeltaC: {
      if (f.a.id == f.b.id || f.dir.is_zero()) return std::nullopt;
      if (f.dir.th != 0 && (!f.a.boundary || !f.b.boundary))
        throw FormDomainError(std::string(sym_name(f.sym)) + " with a theta component at a bulk point");
      int sign = 1;
      Dir d = f.dir;
      if (d.t < 0 || (d.t == 0 && d.th < 0)) {
        d = {-d.t, -d.th};
        sign = -sign;
      }
      Point x = f.a, y = f.b;
      if (y < x) {
        std::swap(x, y);
        sign = -sign;
      }
      return Canon{sign, Factor{f.sym, x, y, d}};
    }
    case Sym::EtaD:
      if (f.a.id == f.b.id) throw FormDomainError("EtaD on the diagonal");
      return Canon{1, Factor::eta_d(f.a, f.b)};
    case Sym::DeltaD: {
      if (f.a.id == f.b.id) throw FormDomainError("DeltaD on the diagonal");
      Point x = f.a, y = f.b;
      if (y < x) std::swap(x, y);
      return Canon{1, Factor::delta_d(x, y)};
    }
  }
  return std::nullopt;
}

// Returns false when the word vanishes.
bool normalize(Word& w, int& sign) {
  for (auto& f : w) {
    auto c = canonical(f);
    if (!c) return false;
    sign *= c->sign;
    f = c->f;
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      if (w[j].odd() && w[j - 1].odd()) sign = -sign;
      std::swap(w[j], w[j - 1]);
    }
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1] && (w[i].odd() || w[i].sym == Sym::Mu)) return false;
  for (const auto& f : w) {
    if (f.sym != Sym::Mu) continue;
    for (const auto& g : w)
      if (g.sym == Sym::Psi && g.a == f.a) return false;
  }
  return true;
}

}  // namespace

std::string to_string(const Factor& f) {
  std::string s = sym_name(f.sym);
  s += "(" + point_str(f.a);
  if (two_point(f.sym)) s += "," + point_str(f.b);
  if ((f.sym == Sym::EtaC || f.sym == Sym::DeltaC) && f.dir != kAlongT)
    s += ";" + std::to_string(f.dir.t) + "," + std::to_string(f.dir.th);
  return s + ")";
}

int degree(const Word& w) {
  int d = 0;
  for (const auto& f : w) d += f.degree();
  return d;
}

void FormExpr::add_word(const Rational& c, Word w) {
  if (c == 0) return;
  int sign = 1;
  if (!normalize(w, sign)) return;
  auto [it, inserted] = terms_.try_emplace(std::move(w), 0);
  if (sign > 0) it->second += c; else it->second -= c;
  if (it->second == 0) terms_.erase(it);
}

FormExpr FormExpr::constant(const Rational& c) {
  FormExpr e;
  e.add_word(c, {});
  return e;
}

FormExpr FormExpr::factor(const Factor& f) { return term(1, {f}); }

FormExpr FormExpr::term(const Rational& c, Word w) {
  FormExpr e;
  e.add_word(c, std::move(w));
  return e;
}

Rational FormExpr::constant_term() const {
  auto it = terms_.find(Word{});
  return it == terms_.end() ? Rational(0) : it->second;
}

FormExpr& FormExpr::operator+=(const FormExpr& o) {
  for (const auto& [w, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(w, 0);
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

FormExpr& FormExpr::operator-=(const FormExpr& o) {
  for (const auto& [w, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(w, 0);
    it->second -= c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

FormExpr& FormExpr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

std::string FormExpr::dump() const {
  if (terms_.empty()) return "0\n";
  std::ostringstream os;
  for (const auto& [w, c] : terms_) {
    os << to_string(c);
    for (const auto& f : w) os << " * " << to_string(f);
    os << "\n";
  }
  return os.str();
}

FormExpr wedge(const FormExpr& a, const FormExpr& b) {
  FormExpr r;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_word(ca * cb, std::move(w));
    }
  return r;
}

FormExpr wedge_all(const std::vector<FormExpr>& factors) {
  FormExpr r = FormExpr::one();
  for (const auto& f : factors) {
    r = wedge(r, f);
    if (r.is_zero()) break;
  }
  return r;
}

FormExpr propagator(PropagatorKind kind, Point i, Point j) {
  if (kind == PropagatorKind::Horizontal)
    return FormExpr::term(1, {Factor::eta_d(i, j), Factor::delta_c(i, j)}) +
           FormExpr::term(1, {Factor::mu(i), Factor::eta_c(i, j)});
  return FormExpr::term(1, {Factor::delta_d(i, j), Factor::eta_c(i, j)}) +
         FormExpr::term(1, {Factor::eta_d(i, j), Factor::dt(i)}) -
         FormExpr::term(1, {Factor::eta_d(i, j), Factor::dt(j)});
}

namespace {

FormExpr d_factor(const Factor& f) {
  switch (f.sym) {
    case Sym::EtaD:
      return FormExpr::factor(Factor::delta_d(f.a, f.b)) - FormExpr::factor(Factor::mu(f.a));
    case Sym::EtaC: {
      FormExpr r = FormExpr::factor(Factor::delta_c(f.a, f.b, f.dir));
      if (f.dir.t != 0) {
        r -= Rational(f.dir.t) * FormExpr::factor(Factor::dt(f.a));
        r += Rational(f.dir.t) * FormExpr::factor(Factor::dt(f.b));
      }
      if (f.dir.th != 0) {
        r -= Rational(f.dir.th) * FormExpr::factor(Factor::dtheta(f.a));
        r += Rational(f.dir.th) * FormExpr::factor(Factor::dtheta(f.b));
      }
      return r;
    }
    case Sym::Psi:
      return FormExpr::factor(Factor::mu(f.a));
    default:
      return {};
  }
}

}  // namespace

FormExpr differential(const FormExpr& e) {
  FormExpr r;
  for (const auto& [w, c] : e.terms()) {
    int prefix_deg = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const FormExpr dk = d_factor(w[k]);
      const Rational sc = (prefix_deg % 2 == 0) ? c : Rational(-c);
      for (const auto& [dw, dc] : dk.terms()) {
        Word nw(w.begin(), w.begin() + static_cast<long>(k));
        nw.insert(nw.end(), dw.begin(), dw.end());
        nw.insert(nw.end(), w.begin() + static_cast<long>(k) + 1, w.end());
        r.add_word(sc * dc, std::move(nw));
      }
      prefix_deg += w[k].degree();
    }
  }
  return r;
}

namespace {

bool parallel_multiple(Dir base, Dir other) {
  // other = k * base for some integer k (base is primitive-free, so test proportionality).
  return static_cast<long>(base.t) * other.th == static_cast<long>(base.th) * other.t;
}

bool regularized_away(const Word& w) {
  for (const auto& f : w) {
    if (f.sym == Sym::DeltaC)
      for (const auto& g : w)
        if (g.sym == Sym::EtaC && g.a == f.a && g.b == f.b && parallel_multiple(f.dir, g.dir)) return true;
    if (f.sym == Sym::DeltaD && std::count(w.begin(), w.end(), f) > 1) return true;
  }
  return false;
}

}  // namespace

FormExpr regularize(const FormExpr& e) {
  FormExpr r;
  for (const auto& [w, c] : e.terms())
    if (!regularized_away(w)) r.add_word(c, w);
  return r;
}

FormExpr restrict_boundary(const FormExpr& e, Point i) {
  FormExpr r;
  const Point to{i.id, true};
  for (const auto& [w, c] : e.terms()) {
    Word nw = w;
    for (auto& f : nw) {
      if (!f.involves(i.id)) continue;
      if (f.sym == Sym::Mu) throw FormDomainError("Mu has no boundary restriction at " + point_str(to));
      if (f.sym == Sym::DeltaD) throw FormDomainError("DeltaD has no boundary restriction at " + point_str(to));
      if (f.a.id == i.id) f.a = to;
      if (two_point(f.sym) && f.b.id == i.id) f.b = to;
    }
    r.add_word(c, std::move(nw));
  }
  return r;
}

FormExpr relabel(const FormExpr& e, const std::map<int, int>& ids) {
  FormExpr r;
  const auto map_point = [&](Point p) {
    auto it = ids.find(p.id);
    if (it != ids.end()) p.id = it->second;
    return p;
  };
  for (const auto& [w, c] : e.terms()) {
    Word nw = w;
    for (auto& f : nw) {
      f.a = map_point(f.a);
      if (two_point(f.sym)) f.b = map_point(f.b);
    }
    r.add_word(c, std::move(nw));
  }
  return r;
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

Point parse_point(const std::string& s) {
  std::string t = trim(s);
  bool boundary = false;
  if (!t.empty() && t[0] == 'b') {
    boundary = true;
    t.erase(0, 1);
  }
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw InputError("malformed point label '" + s + "'");
  return {std::stoi(t), boundary};
}

Factor parse_factor(const std::string& tok) {
  const auto open = tok.find('(');
  const auto close = tok.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw InputError("malformed factor '" + tok + "'");
  const std::string name = trim(std::string_view(tok).substr(0, open));
  std::string args = tok.substr(open + 1, close - open - 1);
  Dir dir = kAlongT;
  if (auto semi = args.find(';'); semi != std::string::npos) {
    const std::string ds = args.substr(semi + 1);
    const auto comma = ds.find(',');
    if (comma == std::string::npos) throw InputError("malformed direction in '" + tok + "'");
    dir = {std::stoi(ds.substr(0, comma)), std::stoi(ds.substr(comma + 1))};
    args = args.substr(0, semi);
  }
  std::vector<Point> pts;
  std::stringstream ss(args);
  for (std::string part; std::getline(ss, part, ',');) pts.push_back(parse_point(part));
  const auto need = [&](std::size_t n) {
    if (pts.size() != n) throw InputError("wrong number of points in '" + tok + "'");
  };
  if (name == "Dt") { need(1); return Factor::dt(pts[0]); }
  if (name == "Dtheta") { need(1); return Factor::dtheta(pts[0]); }
  if (name == "Mu") { need(1); return Factor::mu(pts[0]); }
  if (name == "Psi") { need(1); return Factor::psi(pts[0]); }
  if (name == "EtaC") { need(2); return Factor::eta_c(pts[0], pts[1], dir); }
  if (name == "DeltaC") { need(2); return Factor::delta_c(pts[0], pts[1], dir); }
  if (name == "EtaD") { need(2); return Factor::eta_d(pts[0], pts[1]); }
  if (name == "DeltaD") { need(2); return Factor::delta_d(pts[0], pts[1]); }
  throw InputError("unknown factor '" + name + "'");
}

}  // namespace

FormExpr parse_form(std::string_view text) {
  FormExpr r;
  std::stringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    line = trim(line);
    if (line.empty() || line == "0") continue;
    std::vector<std::string> toks;
    std::stringstream ts(line);
    for (std::string t; std::getline(ts, t, '*');) toks.push_back(trim(t));
    Rational coeff = 1;
    std::size_t start = 0;
    if (!toks.empty() && toks[0].find('(') == std::string::npos) {
      coeff = parse_rational(toks[0]);
      start = 1;
    }
    Word w;
    for (std::size_t k = start; k < toks.size(); ++k) w.push_back(parse_factor(toks[k]));
    r.add_word(coeff, std::move(w));
  }
  return r;
}

}  // namespace lenstheta
