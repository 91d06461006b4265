#include "lenstheta/gluing.hpp"

#include "lenstheta/errors.hpp"
#include "lenstheta/numtheory.hpp"
#include "lenstheta/torus.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <numeric>

namespace lenstheta {

GluingMatrix make_gluing(long m, long p, long n, long q) {
  const GluingMatrix g{m, p, n, q};
  if (p < 0) throw InvalidLensData("p must be nonnegative");
  if (g.det() != 1) throw InvalidLensData("gluing matrix needs mq - np = 1");
  if (std::gcd(p, std::labs(q)) != 1) throw InvalidLensData("p and q must be coprime");
  return g;
}

GluingMatrix canonical_mn(long p, long q) {
  if (p < 0) throw InvalidLensData("p must be nonnegative");
  if (std::gcd(p, std::labs(q)) != 1)
    throw InvalidLensData("p = " + std::to_string(p) + " and q = " + std::to_string(q) + " are not coprime");
  if (p == 0) return {q, 0, 0, q};
  if (p == 1) return {0, 1, -1, q};
  // m = q^{-1} mod p by the extended Euclidean algorithm.
  long r0 = mod_floor(q, p), r1 = p, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const long k = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
  }
  const long m = mod_floor(s0, p);
  return make_gluing(m, p, (m * q - 1) / p, q);
}

GluingMatrix dehn_twist(const GluingMatrix& g, TwistSide side, long k) {
  GluingMatrix r = g;
  if (side == TwistSide::Left) {
    r.q += k * g.p;
    r.n += k * g.m;
  } else {
    r.m += k * g.p;
    r.n += k * g.q;
  }
  return r;
}

FormExpr pullback_boundary(const FormExpr& e, const GluingMatrix& g) {
  FormExpr out;
  for (const auto& [w, c] : e.terms()) {
    FormExpr t = FormExpr::constant(c);
    for (const auto& f : w) {
      if (!f.a.boundary || ((f.sym == Sym::EtaC || f.sym == Sym::DeltaC) && !f.b.boundary))
        throw FormDomainError("pullback_boundary needs boundary factors only: " + to_string(f));
      FormExpr img;
      switch (f.sym) {
        case Sym::Dt:
          img = Rational(g.m) * FormExpr::factor(Factor::dt(f.a)) + Rational(g.p) * FormExpr::factor(Factor::dtheta(f.a));
          break;
        case Sym::Dtheta:
          img = Rational(g.n) * FormExpr::factor(Factor::dt(f.a)) + Rational(g.q) * FormExpr::factor(Factor::dtheta(f.a));
          break;
        case Sym::EtaC:
        case Sym::DeltaC: {
          const Dir d{static_cast<int>(f.dir.t * g.m + f.dir.th * g.n), static_cast<int>(f.dir.t * g.p + f.dir.th * g.q)};
          img = FormExpr::factor(Factor{f.sym, f.a, f.b, d});
          break;
        }
        default:
          throw FormDomainError("pullback_boundary met a disk factor: " + to_string(f));
      }
      t = wedge(t, img);
    }
    out += t;
  }
  return out;
}

Rational glue_kernels(const FormExpr& kernelA, const std::vector<int>& legsA, const FormExpr& kernelB,
                      const std::vector<int>& legsB, const std::vector<int>& sigma, const GluingMatrix& g) {
  const std::size_t n = legsA.size();
  if (legsB.size() != n || sigma.size() != n) throw InputError("glue_kernels: leg counts differ");
  std::map<int, int> ma, mb;
  std::vector<int> points;
  for (std::size_t k = 0; k < n; ++k) {
    ma[legsA[k]] = static_cast<int>(k) + 1;
    mb[legsB[static_cast<std::size_t>(sigma[k])]] = static_cast<int>(k) + 1;
    points.push_back(static_cast<int>(k) + 1);
  }
  const FormExpr a = relabel(kernelA, ma);
  const FormExpr b = pullback_boundary(relabel(kernelB, mb), g);
  return integrate_torus(wedge(a, b), points);
}

namespace {

int max_label(const StateTerm& t) {
  int m = 0;
  for (int l : t.lie.labels()) m = std::max(m, l);
  for (const auto& v : t.residual) m = std::max(m, v.label);
  for (int l : t.legLabels) m = std::max(m, l);
  return m;
}

void rename_label(StateTerm& t, int from, int to) {
  if (from == to) return;
  t.lie.rename(from, to);
  for (auto& v : t.residual)
    if (v.label == from) v.label = to;
  for (auto& l : t.legLabels)
    if (l == from) l = to;
}

void shift_labels(StateTerm& t, int offset) {
  for (auto& x : t.lie.tensors)
    for (auto& i : x.idx) i += offset;
  for (auto& v : t.residual) v.label += offset;
  for (auto& l : t.legLabels) l += offset;
}

int permutation_sign(const std::vector<int>& s) {
  int sign = 1;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) sign = -sign;
  return sign;
}

}  // namespace

StateTerm multiply_terms(const std::vector<StateTerm>& pieces) {
  StateTerm r{1, {}, {}, FormExpr::one(), {}, {}, 0, ""};
  int offset = 0;
  int nextLeg = 1;
  for (const auto& piece : pieces) {
    StateTerm t = piece;
    shift_labels(t, offset);
    offset = std::max(offset, max_label(t));
    std::map<int, int> legMap;
    for (int leg : t.legs) legMap[leg] = nextLeg++;
    r.coeff *= t.coeff;
    r.lie.tensors.insert(r.lie.tensors.end(), t.lie.tensors.begin(), t.lie.tensors.end());
    r.residual.insert(r.residual.end(), t.residual.begin(), t.residual.end());
    r.kernel = wedge(r.kernel, relabel(t.kernel, legMap));
    for (int leg : t.legs) r.legs.push_back(legMap[leg]);
    r.legLabels.insert(r.legLabels.end(), t.legLabels.begin(), t.legLabels.end());
    r.epsPower += t.epsPower;
    r.traceLoops += t.traceLoops;
    r.source += (r.source.empty() ? "" : "*") + t.source;
  }
  return r;
}

std::vector<StateTerm> pair_terms(const StateTerm& a, const StateTerm& b, const GluingMatrix& g) {
  std::vector<StateTerm> out;
  const std::size_t n = a.legs.size();
  if (b.legs.size() != n) return out;
  StateTerm bs = b;
  shift_labels(bs, max_label(a));
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    const Rational value = glue_kernels(a.kernel, a.legs, bs.kernel, bs.legs, sigma, g);
    if (value == 0) continue;
    StateTerm t = bs;
    for (std::size_t k = 0; k < n; ++k) rename_label(t, bs.legLabels[static_cast<std::size_t>(sigma[k])], a.legLabels[k]);
    StateTerm r{a.coeff * b.coeff * permutation_sign(sigma) * value, a.lie, a.residual, FormExpr::one(), {}, {},
                a.epsPower + b.epsPower + static_cast<int>(n), a.source + " x " + b.source,
                a.traceLoops + b.traceLoops};
    r.lie.tensors.insert(r.lie.tensors.end(), t.lie.tensors.begin(), t.lie.tensors.end());
    r.residual.insert(r.residual.end(), t.residual.begin(), t.residual.end());
    out.push_back(std::move(r));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::vector<StateTerm> pair_states(const std::vector<StateTerm>& sa, const std::vector<StateTerm>& sb,
                                   const GluingMatrix& g, int maxOrder) {
  std::vector<StateTerm> out;
  for (const auto& a : sa)
    for (const auto& b : sb) {
      if (a.legs.size() != b.legs.size()) continue;
      if (a.epsPower + b.epsPower + static_cast<int>(a.legs.size()) > maxOrder) continue;
      for (auto& t : pair_terms(a, b, g)) out.push_back(std::move(t));
    }
  return out;
}

std::vector<StateTerm> reduce_residuals(const std::vector<StateTerm>& terms, const GluingMatrix& g) {
  if (g.p == 0) throw InvalidLensData("p = 0 has no redshirt residual fields to reduce");
  const Rational contraction = make_rational(-1, g.p);
  std::vector<StateTerm> out;
  for (const auto& t : terms) {
    if (t.count(Side::A, ResidualKind::Z2) || t.count(Side::B, ResidualKind::ZPlus2)) continue;
    std::vector<std::size_t> as, bs;
    for (std::size_t k = 0; k < t.residual.size(); ++k) {
      const auto& v = t.residual[k];
      if (v.side == Side::A && v.kind == ResidualKind::ZPlus2) as.push_back(k);
      if (v.side == Side::B && v.kind == ResidualKind::Z2) bs.push_back(k);
    }
    if (as.size() != bs.size()) continue;
    std::vector<std::size_t> match(bs.size());
    std::iota(match.begin(), match.end(), 0);
    do {
      StateTerm r = t;
      for (std::size_t k = 0; k < as.size(); ++k) {
        rename_label(r, t.residual[bs[match[k]]].label, t.residual[as[k]].label);
        r.coeff *= contraction;
        ++r.epsPower;
      }
      for (std::size_t k = 0; k < as.size(); ++k) {
        const int label = r.residual[as[k]].label;
        int uses = static_cast<int>(std::count(r.legLabels.begin(), r.legLabels.end(), label));
        for (const auto& x : r.lie.tensors) uses += static_cast<int>(std::count(x.idx.begin(), x.idx.end(), label));
        for (std::size_t j = 0; j < r.residual.size(); ++j)
          if (r.residual[j].label == label && j != as[k] && j != bs[match[k]]) ++uses;
        if (uses == 0) ++r.traceLoops;
      }
      std::vector<ResidualVar> kept;
      for (std::size_t k = 0; k < r.residual.size(); ++k) {
        if (std::find(as.begin(), as.end(), k) != as.end() || std::find(bs.begin(), bs.end(), k) != bs.end()) continue;
        ResidualVar v = r.residual[k];
        if (v.side == Side::B && v.kind == ResidualKind::Z1) v = {Side::Glued, ResidualKind::Z1, v.label};
        else if (v.side == Side::A && v.kind == ResidualKind::Z1) v = {Side::Glued, ResidualKind::Z2, v.label};
        else if (v.side == Side::B && v.kind == ResidualKind::ZPlus1) v = {Side::Glued, ResidualKind::ZPlus1, v.label};
        else if (v.side == Side::A && v.kind == ResidualKind::ZPlus1) v = {Side::Glued, ResidualKind::ZPlus2, v.label};
        kept.push_back(v);
      }
      r.residual = std::move(kept);
      out.push_back(std::move(r));
    } while (std::next_permutation(match.begin(), match.end()));
  }
  return out;
}

Rational two_loop_weight_mt(const GluingMatrix& g, const Rational& e) {
  if (g.p == 0) throw InvalidLensData("the closed form needs p > 0; p = 0 is the S1 x S2 branch");
  if (g.det() != 1) throw InvalidLensData("gluing matrix needs mq - np = 1");
  return e * (dedekind_sum_fast(g.q, g.p) / 2 + make_rational(g.q + g.m, 12 * g.p));
}

std::string to_string(NmtVariant v) { return v == NmtVariant::Theorem ? "theorem" : "seff"; }

HighPrecisionReal nmt_k_sum(const GluingMatrix& g) {
  HighPrecisionReal sum;
  for (long k = 0; k < g.p; ++k) {
    const Rational eta = eta_circle(make_rational(k, g.p));
    if (eta == 0) continue;
    const HighPrecisionReal f = f_theta(make_rational(g.q * k, g.p)) + f_theta(make_rational(g.m * k, g.p));
    sum.value += to_real(eta) * f.value;
    sum.err += f.err;
  }
  return sum;
}

NmtWeight two_loop_weight_nmt(const GluingMatrix& g, const Rational& e, const Rational& ePrime, NmtVariant v) {
  const Rational s = dedekind_sum_fast(g.q, g.p);
  const HighPrecisionReal ks = nmt_k_sum(g);
  const HighPrecisionReal h = harmonic_real(make_rational(1, g.p));
  const Real pi = boost::math::constants::pi<Real>();
  // Theorem: e' (s/2 + K + (q+m) H / (2 pi^2)).  SeffEq: e'/2 (s + K + (m+p) H / (2 pi^2)).
  const long framing = v == NmtVariant::Theorem ? g.q + g.m : g.m + g.p;
  const Real weight = v == NmtVariant::Theorem ? Real(1) : Real(1) / 2;
  const Real rest = ks.value + Real(framing) / (2 * pi * pi) * h.value;
  NmtWeight w;
  w.exact = two_loop_weight_mt(g, e) + ePrime * s / 2;
  w.real.value = to_real(w.exact) + to_real(ePrime) * weight * rest;
  w.real.err = static_cast<double>(abs(to_real(ePrime))) * (ks.err + h.err) + 1e-40;
  return w;
}

EffectiveAction assemble_Seff(const LensSpace& lens, const SplitConstants& sc, const std::vector<StateTerm>& cubic,
                              NmtVariant v) {
  EffectiveAction ea;
  ea.cubic = cubic;
  ea.classUsed = classify_splitting(sc);
  const Rational e = coeff_e(sc);
  if (ea.classUsed == SplittingClass::ManinTriple) {
    ea.twoLoopExact = two_loop_weight_mt(lens.g, e);
    ea.twoLoopReal = {0, 0.0};
  } else {
    const NmtWeight w = two_loop_weight_nmt(lens.g, e, coeff_e_prime(sc), v);
    ea.twoLoopExact = w.exact;
    ea.twoLoopReal = w.real;
    ea.twoLoopReal.value -= to_real(w.exact);
  }
  return ea;
}

}  // namespace lenstheta
