#include "lenstheta/graphs.hpp"

#include "lenstheta/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lenstheta {

bool is_odd(const ResidualVar& v) {
  // A side and glued coordinates share parities: z^2, z+_1 odd. B side is the dual.
  const bool a_like = v.side != Side::B;
  switch (v.kind) {
    case ResidualKind::Z1: return !a_like;
    case ResidualKind::Z2: return a_like;
    case ResidualKind::ZPlus1: return a_like;
    case ResidualKind::ZPlus2: return !a_like;
  }
  return false;
}

std::string to_string(const ResidualVar& v) {
  std::string s;
  switch (v.kind) {
    case ResidualKind::Z1: s = "z1"; break;
    case ResidualKind::Z2: s = "z2"; break;
    case ResidualKind::ZPlus1: s = "zp1"; break;
    case ResidualKind::ZPlus2: s = "zp2"; break;
  }
  if (v.side == Side::A) s += "A";
  if (v.side == Side::B) s += "B";
  return s + "[" + std::to_string(v.label) + "]";
}

void LieNetwork::rename(int from, int to) {
  for (auto& t : tensors)
    for (auto& i : t.idx)
      if (i == from) i = to;
}

std::vector<int> LieNetwork::labels() const {
  std::set<int> s;
  for (const auto& t : tensors) s.insert(t.idx.begin(), t.idx.end());
  return {s.begin(), s.end()};
}

std::string LieNetwork::to_string() const {
  std::string s;
  for (const auto& t : tensors) {
    if (!s.empty()) s += " ";
    const auto& i = t.idx;
    const auto n = [](int x) { return std::to_string(x); };
    switch (t.kind) {
      case TensorKind::GLow: s += "g(" + n(i[0]) + "," + n(i[1]) + "," + n(i[2]) + ")"; break;
      case TensorKind::GMid: s += "g^" + n(i[0]) + "(" + n(i[1]) + "," + n(i[2]) + ")"; break;
      case TensorKind::HMid: s += "h_" + n(i[0]) + "(" + n(i[1]) + "," + n(i[2]) + ")"; break;
      case TensorKind::HUp: s += "h(" + n(i[0]) + "," + n(i[1]) + "," + n(i[2]) + ")"; break;
    }
  }
  return s;
}

namespace {

const Tensor3& tensor_of(const SplitConstants& sc, TensorKind k) {
  switch (k) {
    case TensorKind::GLow: return sc.g_low;
    case TensorKind::GMid: return sc.g_mid;
    case TensorKind::HMid: return sc.h_mid;
    case TensorKind::HUp: return sc.h_up;
  }
  return sc.g_low;
}

}  // namespace

Rational evaluate_network(const LieNetwork& net, const SplitConstants& sc, const std::map<int, int>& fixed) {
  if (net.tensors.empty()) return 1;
  std::vector<int> free;
  for (int l : net.labels())
    if (!fixed.count(l)) free.push_back(l);
  std::map<int, int> value = fixed;
  // Tensors become checkable once their last free label is assigned.
  std::vector<std::vector<std::size_t>> ready(free.size() + 1);
  for (std::size_t t = 0; t < net.tensors.size(); ++t) {
    std::size_t last = 0;
    for (int l : net.tensors[t].idx) {
      const auto it = std::find(free.begin(), free.end(), l);
      if (it != free.end()) last = std::max(last, static_cast<std::size_t>(it - free.begin()) + 1);
    }
    ready[last].push_back(t);
  }
  const auto factor = [&](std::size_t t) -> const Rational& {
    const auto& lt = net.tensors[t];
    return tensor_of(sc, lt.kind)(value[lt.idx[0]], value[lt.idx[1]], value[lt.idx[2]]);
  };
  std::function<Rational(std::size_t, const Rational&)> rec = [&](std::size_t depth, const Rational& acc) -> Rational {
    Rational cur = acc;
    for (std::size_t t : ready[depth]) {
      cur *= factor(t);
      if (cur == 0) return 0;
    }
    if (depth == free.size()) return cur;
    Rational sum = 0;
    for (int v = 0; v < sc.n; ++v) {
      value[free[depth]] = v;
      sum += rec(depth + 1, cur);
    }
    return sum;
  };
  return rec(0, 1);
}

int StateTerm::count(Side s, ResidualKind k) const {
  return static_cast<int>(std::count_if(residual.begin(), residual.end(),
                                        [&](const ResidualVar& v) { return v.side == s && v.kind == k; }));
}

std::string StateTerm::to_string() const {
  std::ostringstream os;
  os << lenstheta::to_string(coeff);
  if (epsPower != 0) os << " eps^" << epsPower;
  if (!lie.tensors.empty()) os << " " << lie.to_string();
  for (const auto& v : residual) os << " " << lenstheta::to_string(v);
  std::string k = kernel.dump();
  if (!k.empty() && k.back() == '\n') k.pop_back();
  for (auto& ch : k)
    if (ch == '\n') ch = ';';
  os << " | " << k;
  if (!legs.empty()) {
    os << " | legs";
    for (std::size_t i = 0; i < legs.size(); ++i) os << " b" << legs[i] << "[" << legLabels[i] << "]";
  }
  return os.str();
}

Rational evaluate_scalar(const StateTerm& t, const SplitConstants& sc) {
  if (!t.residual.empty() || !t.legs.empty()) throw AlgebraError("evaluate_scalar needs a closed term: " + t.to_string());
  Rational v = t.coeff * evaluate_network(t.lie, sc);
  for (int k = 0; k < t.traceLoops; ++k) v *= sc.n;
  return v;
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

int parse_int(const std::string& s, const std::string& line) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError("bad integer in diagram line '" + line + "'");
  }
}

}  // namespace

Diagram parse_diagram(std::string_view text) {
  Diagram d;
  std::stringstream lines{std::string(text)};
  for (std::string raw; std::getline(lines, raw);) {
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string key;
    ls >> key;
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    if (key == "name") {
      d.name = rest;
    } else if (key == "vertices") {
      d.bulk = parse_int(rest, line);
    } else if (key == "edge") {
      const auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw InputError("edge needs 'u->v': '" + line + "'");
      d.edges.push_back({parse_int(trim(rest.substr(0, arrow)), line), parse_int(trim(rest.substr(arrow + 2)), line)});
    } else if (key == "dec") {
      std::stringstream ds(rest);
      std::string v, f;
      ds >> v >> f;
      if (f.empty() || (f[0] != 'a' && f[0] != 'b') || f.size() > 2 || (f.size() == 2 && f[1] != '1' && f[1] != '2'))
        throw InputError("decoration must be a, b, a1, a2, b1 or b2: '" + line + "'");
      d.decorations.push_back({parse_int(v, line), f[0], f.size() == 2 ? f[1] - '0' : 0});
    } else if (key == "leg") {
      d.legs.push_back(parse_int(rest, line));
    } else if (key == "factor") {
      d.symFactor = parse_rational(rest);
    } else if (key == "zeropoint") {
      d.zeroPoint = true;
    } else if (key == "rep") {
      if (rest != "A" && rest != "B") throw InputError("rep must be A or B");
      d.rep = rest == "A" ? Rep::A : Rep::B;
    } else if (key == "sign") {
      d.dualSign = parse_int(rest, line);
    } else {
      throw InputError("unknown diagram statement '" + key + "'");
    }
  }
  return d;
}

std::string format_diagram(const Diagram& d) {
  std::ostringstream os;
  if (!d.name.empty()) os << "name " << d.name << "\n";
  os << "vertices " << d.bulk << "\n";
  if (d.zeroPoint) os << "zeropoint\n";
  for (const auto& e : d.edges) os << "edge " << e.tail << "->" << e.head << "\n";
  for (const auto& x : d.decorations) {
    os << "dec " << x.vertex << " " << x.field;
    if (x.component) os << x.component;
    os << "\n";
  }
  for (int l : d.legs) os << "leg " << l << "\n";
  os << "factor " << to_string(d.symFactor) << "\n";
  if (d.rep == Rep::B) os << "rep B\n";
  if (d.dualSign != 1) os << "sign " << d.dualSign << "\n";
  return os.str();
}

const std::vector<Diagram>& catalogue() {
  static const std::vector<Diagram> cat = [] {
    const char* literals[] = {
        "name Gamma0\nvertices 0\nzeropoint\nleg 1\nfactor -1\n",
        "name Gamma1_0\nvertices 1\ndec 1 a\ndec 1 b\ndec 1 b\nfactor 1/2\n",
        "name Gamma1_1\nvertices 1\ndec 1 b\ndec 1 a\nedge 1->2\nleg 2\nfactor -1\n",
        "name Gamma1_2b\nvertices 1\ndec 1 b\nedge 1->2\nedge 1->3\nleg 2\nleg 3\nfactor 1/2\n",
        "name Gamma1_2a\nvertices 1\ndec 1 a\nedge 1->2\nedge 1->3\nleg 2\nleg 3\nfactor 1/2\n",
        "name Gamma1_3\nvertices 1\nedge 1->2\nedge 1->3\nedge 1->4\nleg 2\nleg 3\nleg 4\nfactor 1/6\n",
        "name Gamma2_0\nvertices 2\ndec 1 b\ndec 2 b\nedge 1->2\nedge 2->1\nfactor 1/2\n",
        "name Gamma2_1\nvertices 2\ndec 1 b\nedge 1->2\nedge 2->1\nedge 2->3\nleg 3\nfactor 1\n",
        "name Gamma2_2\nvertices 2\nedge 1->3\nedge 1->2\nedge 2->1\nedge 2->4\nleg 3\nleg 4\nfactor 1/2\n",
    };
    std::vector<Diagram> v;
    for (const char* l : literals) v.push_back(parse_diagram(l));
    return v;
  }();
  return cat;
}

const Diagram& catalogue_entry(std::string_view name) {
  for (const auto& d : catalogue())
    if (d.name == name) return d;
  throw InputError("no catalogue diagram named '" + std::string(name) + "'");
}

Diagram dualize(const Diagram& d) {
  Diagram r = d;
  for (auto& e : r.edges) std::swap(e.tail, e.head);
  for (auto& x : r.decorations) x.field = x.field == 'a' ? 'b' : 'a';
  r.rep = d.rep == Rep::A ? Rep::B : Rep::A;
  if (d.edges.size() % 2 != 0) r.dualSign = -r.dualSign;
  return r;
}

namespace {

struct Slot {
  bool decoration = false;
  std::size_t index = 0;  // into decorations or edges
};

bool is_leg(const Diagram& d, int id) { return std::find(d.legs.begin(), d.legs.end(), id) != d.legs.end(); }

std::vector<StateTerm> evaluate_zero_point(const Diagram& d) {
  if (d.legs.size() != 1 || d.bulk != 0) throw InputError("zero-point diagram needs one leg and no bulk vertex");
  const int leg = d.legs[0];
  const int label = 1;
  std::vector<StateTerm> out;
  StateTerm t1{d.symFactor, {}, {{Side::A, ResidualKind::ZPlus1, label}}, FormExpr::one(), {leg}, {label}, d.eps_power(), d.name};
  StateTerm t2{d.symFactor, {}, {{Side::A, ResidualKind::ZPlus2, label}}, FormExpr::factor(Factor::dt(bdry(leg))),
               {leg}, {label}, d.eps_power(), d.name};
  out.push_back(std::move(t1));
  out.push_back(std::move(t2));
  return out;
}

std::vector<StateTerm> evaluate_a_form(const Diagram& d) {
  if (d.zeroPoint) return evaluate_zero_point(d);
  const auto is_bulk = [&](int id) { return id >= 1 && id <= d.bulk; };
  for (const auto& e : d.edges) {
    if (!is_bulk(e.tail)) throw InputError("edge tail must be a bulk vertex in " + d.name);
    if (!is_bulk(e.head) && !is_leg(d, e.head)) throw InputError("edge head is neither bulk nor leg in " + d.name);
  }
  for (const auto& x : d.decorations)
    if (!is_bulk(x.vertex)) throw InputError("decoration on a non-bulk vertex in " + d.name);

  int next = 1;
  std::vector<int> edgeLabel(d.edges.size()), decLabel(d.decorations.size());
  for (auto& l : edgeLabel) l = next++;
  for (auto& l : decLabel) l = next++;

  LieNetwork lie;
  std::vector<std::size_t> decOrder;
  for (int v = 1; v <= d.bulk; ++v) {
    std::vector<Slot> aslots, bslots;
    for (std::size_t k = 0; k < d.decorations.size(); ++k)
      if (d.decorations[k].vertex == v) (d.decorations[k].field == 'a' ? aslots : bslots).push_back({true, k});
    std::vector<Slot> inc, out;
    for (std::size_t k = 0; k < d.edges.size(); ++k) {
      if (d.edges[k].head == v) bslots.push_back({false, k});
      if (d.edges[k].tail == v) aslots.push_back({false, k});
    }
    if (aslots.size() + bslots.size() != 3)
      throw InputError("vertex " + std::to_string(v) + " of " + d.name + " is not trivalent");
    std::vector<Slot> order;
    TensorKind kind;
    switch (aslots.size()) {
      case 3: kind = TensorKind::GLow; order = aslots; break;
      case 2: kind = TensorKind::GMid; order = {bslots[0], aslots[0], aslots[1]}; break;
      case 1: kind = TensorKind::HMid; order = {aslots[0], bslots[0], bslots[1]}; break;
      default: kind = TensorKind::HUp; order = bslots; break;
    }
    LieTensor t{kind, {}};
    for (std::size_t s = 0; s < 3; ++s) {
      t.idx[s] = order[s].decoration ? decLabel[order[s].index] : edgeLabel[order[s].index];
      if (order[s].decoration) decOrder.push_back(order[s].index);
    }
    lie.tensors.push_back(t);
  }

  std::vector<int> legLabels;
  for (int leg : d.legs) {
    int found = -1;
    for (std::size_t k = 0; k < d.edges.size(); ++k)
      if (d.edges[k].head == leg) {
        if (found >= 0) throw InputError("leg with two edges in " + d.name);
        found = static_cast<int>(k);
      }
    if (found < 0) throw InputError("leg without an edge in " + d.name);
    legLabels.push_back(edgeLabel[static_cast<std::size_t>(found)]);
  }

  std::vector<FormExpr> props;
  for (const auto& e : d.edges)
    props.push_back(propagator(PropagatorKind::Horizontal, bulk(e.tail), is_leg(d, e.head) ? bdry(e.head) : bulk(e.head)));
  const FormExpr prop = regularize(wedge_all(props));
  std::vector<int> bulkIds;
  for (int v = 1; v <= d.bulk; ++v) bulkIds.push_back(v);

  // Components of each decoration in field order.
  std::vector<std::vector<int>> options;
  for (std::size_t k : decOrder) {
    const int c = d.decorations[k].component;
    options.push_back(c ? std::vector<int>{c} : std::vector<int>{1, 2});
  }
  std::vector<StateTerm> out;
  std::vector<std::size_t> pick(decOrder.size(), 0);
  for (;;) {
    std::vector<ResidualVar> residual;
    FormExpr chi = FormExpr::one();
    int chiDegree = 0;
    int sign = 1;
    for (std::size_t s = 0; s < decOrder.size(); ++s) {
      const auto& dec = d.decorations[decOrder[s]];
      const int comp = options[s][pick[s]];
      const Point at = bulk(dec.vertex);
      ResidualVar var{Side::A, ResidualKind::Z1, decLabel[decOrder[s]]};
      Word w;
      if (dec.field == 'a') {
        var.kind = comp == 1 ? ResidualKind::Z1 : ResidualKind::Z2;
        w = comp == 1 ? Word{Factor::mu(at), Factor::dt(at)} : Word{Factor::mu(at)};
      } else {
        var.kind = comp == 1 ? ResidualKind::ZPlus1 : ResidualKind::ZPlus2;
        if (comp == 2) w = {Factor::dt(at)};
      }
      if (is_odd(var) && chiDegree % 2 != 0) sign = -sign;
      chiDegree += degree(w);
      chi = wedge(chi, FormExpr::term(1, w));
      residual.push_back(var);
    }
    const FormExpr kernel = pushforward_bulk_all(regularize(wedge(chi, prop)), bulkIds);
    if (!kernel.is_zero())
      out.push_back({d.symFactor * sign, lie, residual, kernel, d.legs, legLabels, d.eps_power(), d.name});
    std::size_t j = 0;
    while (j < pick.size() && ++pick[j] == options[j].size()) pick[j++] = 0;
    if (j == pick.size()) break;
  }
  return out;
}

}  // namespace

std::vector<StateTerm> dualize_terms(const std::vector<StateTerm>& terms, int edgeCount) {
  std::vector<StateTerm> out = terms;
  for (auto& t : out) {
    if (edgeCount % 2 != 0) t.coeff = -t.coeff;
    for (auto& v : t.residual) {
      if (v.side != Side::A) throw AlgebraError("dualize_terms expects A-side coordinates");
      v.side = Side::B;
      switch (v.kind) {
        case ResidualKind::Z1: v.kind = ResidualKind::ZPlus1; break;
        case ResidualKind::Z2: v.kind = ResidualKind::ZPlus2; break;
        case ResidualKind::ZPlus1: v.kind = ResidualKind::Z1; break;
        case ResidualKind::ZPlus2: v.kind = ResidualKind::Z2; break;
      }
    }
    for (auto& x : t.lie.tensors) {
      switch (x.kind) {
        case TensorKind::GLow: x.kind = TensorKind::HUp; break;
        case TensorKind::GMid: x.kind = TensorKind::HMid; break;
        case TensorKind::HMid: x.kind = TensorKind::GMid; break;
        case TensorKind::HUp: x.kind = TensorKind::GLow; break;
      }
    }
  }
  return out;
}

std::vector<StateTerm> evaluate_diagram(const Diagram& d, Rep rep) {
  const Diagram a = d.rep == Rep::A ? d : dualize(d);
  std::vector<StateTerm> terms = evaluate_a_form(a);
  if (rep == Rep::B) return dualize_terms(terms, static_cast<int>(a.edges.size()));
  return terms;
}

}  // namespace lenstheta
