#include "lenstheta/pipeline.hpp"

#include "lenstheta/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <numeric>

namespace lenstheta {

namespace {

constexpr int kMaxZeroPoint = 4;

struct Piece {
  StateTerm term;
  int bulk = 0;
  bool zeroPoint = false;
  int redshirts = 0;  // z+_2^A on the A side, z^{2,B} on the B side
};

const std::vector<Piece>& all_pieces(Rep rep) {
  static const auto build = [](Rep r) {
    std::vector<Piece> v;
    for (const auto& d : catalogue())
      for (auto& t : evaluate_diagram(d, r)) {
        const int z = r == Rep::A ? t.count(Side::A, ResidualKind::ZPlus2) : t.count(Side::B, ResidualKind::Z2);
        v.push_back({std::move(t), d.bulk, d.zeroPoint, z});
      }
    return v;
  };
  static const std::vector<Piece> a = build(Rep::A);
  static const std::vector<Piece> b = build(Rep::B);
  return rep == Rep::A ? a : b;
}

bool tensors_vanish(const StateTerm& t, const SplitConstants* sc) {
  if (!sc) return false;
  for (const auto& x : t.lie.tensors) {
    const bool zero = (x.kind == TensorKind::GLow && sc->g_low.is_zero()) || (x.kind == TensorKind::GMid && sc->g_mid.is_zero()) ||
                      (x.kind == TensorKind::HMid && sc->h_mid.is_zero()) || (x.kind == TensorKind::HUp && sc->h_up.is_zero());
    if (zero) return true;
  }
  return false;
}

// Pieces that can survive the reduction: no z^{2,A} on the A side, no z+_2^B on the B side.
// With redshirtOnly, the other coordinates are excluded too.
std::vector<const Piece*> usable_pieces(Rep rep, bool redshirtOnly, const SplitConstants* sc) {
  std::vector<const Piece*> v;
  for (const auto& p : all_pieces(rep)) {
    bool ok = !tensors_vanish(p.term, sc);
    for (const auto& r : p.term.residual) {
      const bool redshirt = rep == Rep::A ? r.kind == ResidualKind::ZPlus2 : r.kind == ResidualKind::Z2;
      const bool dead = rep == Rep::A ? r.kind == ResidualKind::Z2 : r.kind == ResidualKind::ZPlus2;
      if (dead || (redshirtOnly && !redshirt)) ok = false;
    }
    if (ok) v.push_back(&p);
  }
  return v;
}

struct Multiset {
  std::vector<std::pair<const Piece*, int>> parts;
  int bulk = 0, legs = 0, z = 0;
};

std::vector<Multiset> multisets(const std::vector<const Piece*>& pieces, int maxBulk) {
  std::vector<Multiset> out;
  Multiset cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int zeroPoints) {
    if (i == pieces.size()) {
      out.push_back(cur);
      return;
    }
    const Piece* p = pieces[i];
    rec(i + 1, zeroPoints);
    int k = 1;
    for (;; ++k) {
      if (p->zeroPoint ? zeroPoints + k > kMaxZeroPoint : (p->bulk == 0 || cur.bulk + p->bulk > maxBulk)) break;
      cur.bulk += p->bulk;
      cur.legs += static_cast<int>(p->term.legs.size());
      cur.z += p->redshirts;
      cur.parts.emplace_back(p, k);
      rec(i + 1, zeroPoints + (p->zeroPoint ? k : 0));
      cur.parts.pop_back();
    }
    cur.bulk -= (k - 1) * p->bulk;
    cur.legs -= (k - 1) * static_cast<int>(p->term.legs.size());
    cur.z -= (k - 1) * p->redshirts;
  };
  rec(0, 0);
  return out;
}

std::string name_of(const Multiset& m) {
  std::string s;
  for (const auto& [p, k] : m.parts) {
    if (!s.empty()) s += " ";
    s += p->term.source;
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s.empty() ? "1" : s;
}

struct Expanded {
  StateTerm product;
  Rational weight = 1;             // 1 / prod(mult!)
  std::vector<int> legOwner;       // piece index per leg
  std::vector<bool> ownerZeroPoint;
  std::vector<int> residualOwner;  // piece index per residual coordinate
};

Expanded expand(const Multiset& m) {
  Expanded e;
  std::vector<StateTerm> list;
  for (const auto& [p, k] : m.parts) {
    for (int j = 0; j < k; ++j) {
      const int owner = static_cast<int>(list.size());
      list.push_back(p->term);
      e.ownerZeroPoint.push_back(p->zeroPoint);
      for (std::size_t l = 0; l < p->term.legs.size(); ++l) e.legOwner.push_back(owner);
      for (std::size_t r = 0; r < p->term.residual.size(); ++r) e.residualOwner.push_back(owner);
      e.weight /= (j + 1);
    }
  }
  e.product = multiply_terms(list);
  return e;
}

int max_label(const StateTerm& t) {
  int m = 0;
  for (int l : t.lie.labels()) m = std::max(m, l);
  for (const auto& v : t.residual) m = std::max(m, v.label);
  for (int l : t.legLabels) m = std::max(m, l);
  return m;
}

int permutation_sign(const std::vector<int>& s) {
  int sign = 1;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) sign = -sign;
  return sign;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); }
  void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

struct GluedTerm {
  std::string aName, bName;
  StateTerm term;  // no legs, no kernel; reduced coordinates
};

// Glues every admissible pair of A/B products with `bulkTotal` bulk vertices,
// integrates out the redshirt pair and keeps connected results.
std::vector<GluedTerm> glue_products(const GluingMatrix& g, int bulkTotal, bool redshirtOnly, const SplitConstants* sc) {
  if (g.p == 0) throw InvalidLensData("the gluing pipeline needs p > 0");
  const Rational contraction = make_rational(-1, g.p);
  const auto as = multisets(usable_pieces(Rep::A, redshirtOnly, sc), bulkTotal);
  const auto bs = multisets(usable_pieces(Rep::B, redshirtOnly, sc), bulkTotal);
  std::vector<GluedTerm> out;
  for (const auto& ma : as)
    for (const auto& mb : bs) {
      if (ma.bulk + mb.bulk != bulkTotal || ma.legs != mb.legs || ma.z != mb.z) continue;
      if (ma.legs == 0 && (ma.parts.empty() || mb.parts.empty())) continue;
      const Expanded ea = expand(ma);
      Expanded eb = expand(mb);
      const int offset = max_label(ea.product);
      for (auto& x : eb.product.lie.tensors)
        for (auto& i : x.idx) i += offset;
      for (auto& v : eb.product.residual) v.label += offset;
      for (auto& l : eb.product.legLabels) l += offset;
      const std::size_t n = ea.product.legs.size();
      const int na = static_cast<int>(ea.ownerZeroPoint.size());
      const int nb = static_cast<int>(eb.ownerZeroPoint.size());

      std::vector<std::size_t> za, zb;
      for (std::size_t k = 0; k < ea.product.residual.size(); ++k)
        if (ea.product.residual[k].kind == ResidualKind::ZPlus2) za.push_back(k);
      for (std::size_t k = 0; k < eb.product.residual.size(); ++k)
        if (eb.product.residual[k].kind == ResidualKind::Z2) zb.push_back(k);

      std::vector<int> sigma(n);
      std::iota(sigma.begin(), sigma.end(), 0);
      do {
        bool freeFree = false;
        for (std::size_t k = 0; k < n; ++k)
          if (ea.ownerZeroPoint[static_cast<std::size_t>(ea.legOwner[k])] &&
              eb.ownerZeroPoint[static_cast<std::size_t>(eb.legOwner[static_cast<std::size_t>(sigma[k])])])
            freeFree = true;
        if (freeFree) continue;
        const Rational integral =
            glue_kernels(ea.product.kernel, ea.product.legs, eb.product.kernel, eb.product.legs, sigma, g);
        if (integral == 0) continue;
        std::vector<std::size_t> match(zb.size());
        std::iota(match.begin(), match.end(), 0);
        do {
          UnionFind uf(na + nb);
          for (std::size_t k = 0; k < n; ++k) uf.join(ea.legOwner[k], na + eb.legOwner[static_cast<std::size_t>(sigma[k])]);
          for (std::size_t k = 0; k < za.size(); ++k)
            uf.join(ea.residualOwner[za[k]], na + eb.residualOwner[zb[match[k]]]);
          bool connected = true;
          for (int x = 1; x < na + nb; ++x)
            if (uf.find(x) != uf.find(0)) connected = false;
          if (!connected) continue;

          StateTerm t;
          t.coeff = ea.product.coeff * eb.product.coeff * ea.weight * eb.weight * permutation_sign(sigma) * integral;
          t.lie = ea.product.lie;
          t.lie.tensors.insert(t.lie.tensors.end(), eb.product.lie.tensors.begin(), eb.product.lie.tensors.end());
          t.epsPower = ea.product.epsPower + eb.product.epsPower + static_cast<int>(n);
          t.traceLoops = ea.product.traceLoops + eb.product.traceLoops;
          t.source = name_of(ma) + " x " + name_of(mb);
          std::vector<ResidualVar> residual = ea.product.residual;
          residual.insert(residual.end(), eb.product.residual.begin(), eb.product.residual.end());
          std::map<int, int> rename;
          std::function<int(int)> root = [&](int l) {
            auto it = rename.find(l);
            return it == rename.end() ? l : root(it->second);
          };
          const auto identify = [&](int x, int y) {
            const int rx = root(x), ry = root(y);
            if (rx != ry) rename[ry] = rx;
          };
          for (std::size_t k = 0; k < n; ++k)
            identify(ea.product.legLabels[k], eb.product.legLabels[static_cast<std::size_t>(sigma[k])]);
          std::vector<bool> drop(residual.size(), false);
          for (std::size_t k = 0; k < za.size(); ++k) {
            identify(residual[za[k]].label, residual[ea.product.residual.size() + zb[match[k]]].label);
            drop[za[k]] = true;
            drop[ea.product.residual.size() + zb[match[k]]] = true;
            t.coeff *= contraction;
            ++t.epsPower;
          }
          for (auto& x : t.lie.tensors)
            for (auto& i : x.idx) i = root(i);
          for (std::size_t k = 0; k < residual.size(); ++k) {
            if (drop[k]) continue;
            ResidualVar v = residual[k];
            v.label = root(v.label);
            if (v.side == Side::B && v.kind == ResidualKind::Z1) v.kind = ResidualKind::Z1;
            else if (v.side == Side::A && v.kind == ResidualKind::Z1) v.kind = ResidualKind::Z2;
            else if (v.side == Side::B && v.kind == ResidualKind::ZPlus1) v.kind = ResidualKind::ZPlus1;
            else if (v.side == Side::A && v.kind == ResidualKind::ZPlus1) v.kind = ResidualKind::ZPlus2;
            v.side = Side::Glued;
            t.residual.push_back(v);
          }
          // Contracted labels that touch neither a tensor nor a surviving coordinate close a trace loop.
          std::set<int> used;
          for (const auto& x : t.lie.tensors) used.insert(x.idx.begin(), x.idx.end());
          for (const auto& v : t.residual) used.insert(v.label);
          std::set<int> closed;
          for (std::size_t k = 0; k < za.size(); ++k) closed.insert(root(residual[za[k]].label));
          for (int l : closed)
            if (!used.count(l)) ++t.traceLoops;
          out.push_back({name_of(ma), name_of(mb), std::move(t)});
        } while (std::next_permutation(match.begin(), match.end()));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  return out;
}

}  // namespace

PipelineResult end_to_end_trace(const GluingMatrix& g, const SplitConstants& sc) {
  PipelineResult r;
  r.weight = 0;
  for (const auto& gt : glue_products(g, 2, true, &sc)) {
    if (gt.term.epsPower != 1 || !gt.term.residual.empty()) continue;
    const Rational v = evaluate_scalar(gt.term, sc);
    if (v == 0) continue;
    r.weight += v;
    auto it = std::find_if(r.trace.begin(), r.trace.end(),
                           [&](const PipelineEntry& e) { return e.aSide == gt.aName && e.bSide == gt.bName; });
    if (it == r.trace.end()) r.trace.push_back({gt.aName, gt.bName, v});
    else it->value += v;
  }
  r.trace.erase(std::remove_if(r.trace.begin(), r.trace.end(), [](const PipelineEntry& e) { return e.value == 0; }),
                r.trace.end());
  return r;
}

Rational end_to_end_weight_mt(const LensSpace& lens, const SplitConstants& sc) {
  if (classify_splitting(sc) != SplittingClass::ManinTriple)
    throw AlgebraError("end_to_end_weight_mt needs a Manin triple splitting");
  return end_to_end_trace(lens.g, sc).weight;
}

namespace {

const StateTerm& single_term(const std::string& name, Rep rep, Side side, ResidualKind kind) {
  static std::map<std::tuple<std::string, Rep, Side, ResidualKind>, StateTerm> cache;
  const auto key = std::make_tuple(name, rep, side, kind);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  for (auto& t : evaluate_diagram(catalogue_entry(name), rep))
    if (t.residual.size() == 1 && t.residual[0].side == side && t.residual[0].kind == kind)
      return cache.emplace(key, t).first->second;
  throw AlgebraError("no term " + name + " with the requested coordinate");
}

}  // namespace

Rational psi12_pairing_coefficient(const GluingMatrix& g) {
  const StateTerm& a = single_term("Gamma1_2b", Rep::A, Side::A, ResidualKind::ZPlus2);
  const StateTerm& b = single_term("Gamma1_2b", Rep::B, Side::B, ResidualKind::Z2);
  Rational c = 0;
  for (const auto& t : pair_terms(a, b, g)) {
    // g^i(j,k) h_l(j',k'): +1 when (j',k') = (j,k), -1 when swapped.
    const auto& gt = t.lie.tensors.at(0);
    const auto& ht = t.lie.tensors.at(1);
    if (gt.kind != TensorKind::GMid || ht.kind != TensorKind::HMid) throw AlgebraError("unexpected network " + t.lie.to_string());
    const int sign = (gt.idx[1] == ht.idx[1] && gt.idx[2] == ht.idx[2]) ? 1 : -1;
    c += sign * t.coeff;
  }
  return c;
}

Rational gamma0_pairing_coefficient(const GluingMatrix& g) {
  const StateTerm& a = single_term("Gamma0", Rep::A, Side::A, ResidualKind::ZPlus2);
  const StateTerm& b = single_term("Gamma0", Rep::B, Side::B, ResidualKind::Z2);
  Rational c = 0;
  for (const auto& t : pair_terms(a, b, g)) c += t.coeff;
  return c;
}

std::vector<StateTerm> cubic_effective_terms(const GluingMatrix& g) {
  std::vector<StateTerm> out;
  for (auto& gt : glue_products(g, 1, false, nullptr))
    if (gt.term.residual.size() == 3) out.push_back(std::move(gt.term));
  return out;
}

}  // namespace lenstheta
