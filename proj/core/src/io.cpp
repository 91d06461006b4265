#include "lenstheta/io.hpp"

#include "lenstheta/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace lenstheta {

namespace {

using nlohmann::json;

Rational rational_of(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return make_rational(v.get<long>());
  throw InputError("expected a rational string or an integer, got " + v.dump());
}

int index_of(const json& v, int dim) {
  if (!v.is_number_integer()) throw InputError("expected an index, got " + v.dump());
  const long i = v.get<long>();
  if (i < 0 || i >= dim) throw InputError("index " + std::to_string(i) + " out of range for dim " + std::to_string(dim));
  return static_cast<int>(i);
}

std::vector<RationalVector> vectors_of(const json& arr, int dim, const char* key) {
  if (!arr.is_array()) throw InputError(std::string(key) + " must be an array of vectors");
  std::vector<RationalVector> out;
  for (const auto& row : arr) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw InputError(std::string(key) + " vectors must have " + std::to_string(dim) + " entries");
    RationalVector v;
    for (const auto& x : row) v.push_back(rational_of(x));
    out.push_back(std::move(v));
  }
  return out;
}

json vectors_json(const std::vector<RationalVector>& vs) {
  json arr = json::array();
  for (const auto& v : vs) {
    json row = json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    arr.push_back(row);
  }
  return arr;
}

}  // namespace

AlgebraFile parse_algebra_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw InputError("algebra file needs an integer \"dim\"");
  const int dim = j["dim"].get<int>();
  if (dim <= 0) throw InputError("dim must be positive");

  AlgebraFile f;
  f.algebra.dim = dim;
  f.algebra.bracket = Tensor3(dim);
  f.algebra.form = RationalMatrix(dim, dim);
  for (const auto& e : j.value("bracket", json::array())) {
    if (!e.is_array() || e.size() != 4) throw InputError("bracket entries are [a, b, c, value]");
    f.algebra.bracket(index_of(e[0], dim), index_of(e[1], dim), index_of(e[2], dim)) = rational_of(e[3]);
  }
  for (const auto& e : j.value("form", json::array())) {
    if (!e.is_array() || e.size() != 3) throw InputError("form entries are [a, b, value]");
    const int a = index_of(e[0], dim), b = index_of(e[1], dim);
    f.algebra.form(a, b) = rational_of(e[2]);
    f.algebra.form(b, a) = f.algebra.form(a, b);
  }
  if (j.contains("splitV") != j.contains("splitW")) throw InputError("splitV and splitW must be given together");
  if (j.contains("splitV")) {
    IsotropicSplitting s{vectors_of(j["splitV"], dim, "splitV"), vectors_of(j["splitW"], dim, "splitW")};
    if (s.basisV.size() != s.basisW.size() || 2 * static_cast<int>(s.basisV.size()) != dim)
      throw InputError("splitV and splitW must each hold dim/2 vectors");
    f.split = std::move(s);
  }
  return f;
}

AlgebraFile load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_algebra_json(os.str());
}

std::string algebra_to_json(const AlgebraFile& f) {
  const int n = f.algebra.dim;
  json j;
  j["dim"] = n;
  j["bracket"] = json::array();
  j["form"] = json::array();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c)
        if (f.algebra.bracket(a, b, c) != 0) j["bracket"].push_back({a, b, c, to_string(f.algebra.bracket(a, b, c))});
      if (a <= b && f.algebra.form(a, b) != 0) j["form"].push_back({a, b, to_string(f.algebra.form(a, b))});
    }
  if (f.split) {
    j["splitV"] = vectors_json(f.split->basisV);
    j["splitW"] = vectors_json(f.split->basisW);
  }
  return j.dump(2);
}

namespace {

json record_json(const ResultRecord& r) {
  return json{{"p", r.g.p},
              {"q", r.g.q},
              {"m", r.g.m},
              {"n", r.g.n},
              {"class", to_string(r.cls)},
              {"w2_exact", to_string(r.w2Exact)},
              {"w2_real", r.w2Real},
              {"variant", to_string(r.variant)}};
}

}  // namespace

std::string result_to_json(const ResultRecord& r) { return record_json(r).dump(); }

std::string results_to_json(const std::vector<ResultRecord>& rs) {
  if (rs.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    out += "  " + record_json(rs[i]).dump();
    out += i + 1 < rs.size() ? ",\n" : "\n";
  }
  return out + "]";
}

}  // namespace lenstheta
