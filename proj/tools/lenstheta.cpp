// lenstheta: two-loop Theta weights on lens spaces from the command line.

#include "lenstheta/algebra.hpp"
#include "lenstheta/errors.hpp"
#include "lenstheta/gluing.hpp"
#include "lenstheta/io.hpp"
#include "lenstheta/numtheory.hpp"
#include "lenstheta/oracle.hpp"
#include "lenstheta/pipeline.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace lenstheta;

namespace {

constexpr int kOk = 0;
constexpr int kInvalidLens = 2;
constexpr int kFileError = 3;
constexpr int kVerifyFailed = 4;

struct LieData {
  SplitConstants sc;
  SplittingClass cls = SplittingClass::ManinTriple;
  Rational e, ePrime;
  bool unitE = false;  // report w2 / e
  std::string label;
};

LieData load_lie_data(const std::string& path, bool unitE) {
  LieData d;
  if (path.empty()) {
    auto [alg, split] = drinfeld_double(two_dim_bialgebra());
    d.sc = build_split_constants(alg, split);
    d.label = "Drinfeld double of [x,y]=y";
    d.unitE = true;
  } else {
    const AlgebraFile f = load_algebra_file(path);
    if (!f.split) throw InputError(path + ": no splitV/splitW given");
    if (auto r = validate_algebra(f.algebra); !r.ok) throw AlgebraError(path + ": " + r.message());
    if (auto r = validate_splitting(f.algebra, *f.split); !r.ok) throw AlgebraError(path + ": " + r.message());
    d.sc = build_split_constants(f.algebra, *f.split);
    d.label = path;
    d.unitE = unitE;
  }
  d.cls = classify_splitting(d.sc);
  d.e = coeff_e(d.sc);
  d.ePrime = coeff_e_prime(d.sc);
  if (d.unitE && d.e == 0) throw AlgebraError("e = 0, the weight cannot be reported per unit e");
  return d;
}

GluingMatrix lens_gluing(long p, long q, const std::optional<long>& m, const std::optional<long>& n) {
  if (m.has_value() != n.has_value()) throw InvalidLensData("--m and --n must be given together");
  return m ? make_gluing(*m, p, *n, q) : canonical_mn(p, q);
}

ResultRecord compute(const GluingMatrix& g, const LieData& d, NmtVariant v) {
  ResultRecord r{g, d.cls, 0, 0.0, v};
  const Rational e = d.unitE ? Rational(1) : d.e;
  const Rational ep = d.unitE ? Rational(d.ePrime / d.e) : d.ePrime;
  if (d.cls == SplittingClass::ManinTriple) {
    r.w2Exact = two_loop_weight_mt(g, e);
    r.w2Real = r.w2Exact.get_d();
  } else {
    const NmtWeight w = two_loop_weight_nmt(g, e, ep, v);
    r.w2Exact = w.exact;
    r.w2Real = w.real.to_double();
  }
  return r;
}

std::string real_text(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string csv_row(const ResultRecord& r) {
  const Rational s = r.g.p > 0 ? dedekind_sum_fast(r.g.q, r.g.p) : Rational(0);
  std::ostringstream os;
  os << r.g.p << ',' << r.g.q << ',' << r.g.m << ',' << r.g.n << ',' << to_string(s) << ',' << to_string(r.w2Exact)
     << ',' << real_text(r.w2Real);
  return os.str();
}

const char* kCsvHeader = "p,q,m,n,s(q,p),w2_exact,w2_real";

int run_weight(long p, long q, const std::optional<long>& m, const std::optional<long>& n, const std::string& algebra,
               NmtVariant v, const std::string& format, bool unitE) {
  const GluingMatrix g = lens_gluing(p, q, m, n);
  const LieData d = load_lie_data(algebra, unitE);
  if (g.p == 0) {
    // S1 x S2: no reduction, only the psi12 pairing coefficient is available.
    const Rational c = psi12_pairing_coefficient(g);
    if (format == "json")
      std::cout << "{\"p\":0,\"q\":" << g.q << ",\"psi12_pairing\":\"" << to_string(c) << "\"}\n";
    else
      std::cout << "S1xS2 branch: psi12 pairing coefficient " << to_string(c) << "\n";
    return kOk;
  }
  const ResultRecord r = compute(g, d, v);
  if (format == "json") {
    std::cout << result_to_json(r) << "\n";
  } else if (format == "csv") {
    std::cout << kCsvHeader << "\n" << csv_row(r) << "\n";
  } else {
    std::cout << to_string(r.w2Exact) << "\n";
    if (d.cls != SplittingClass::ManinTriple) std::cout << real_text(r.w2Real) << "\n";
  }
  return kOk;
}

int run_table(long pmax, const std::string& algebra, NmtVariant v, const std::string& format, bool unitE) {
  if (pmax < 1) throw InvalidLensData("--pmax must be at least 1");
  const LieData d = load_lie_data(algebra, unitE);
  std::vector<ResultRecord> rows;
  for (long p = 1; p <= pmax; ++p)
    for (long q = 0; q < p; ++q)
      if (gcd(p, q) == 1) rows.push_back(compute(canonical_mn(p, q), d, v));
  if (format == "json") {
    std::cout << results_to_json(rows) << "\n";
  } else {
    std::cout << kCsvHeader << "\n";
    for (const auto& r : rows) std::cout << csv_row(r) << "\n";
  }
  return kOk;
}

int run_algebra_check(const std::string& path) {
  const AlgebraFile f = load_algebra_file(path);
  if (auto r = validate_algebra(f.algebra); !r.ok) {
    std::cout << "algebra: FAIL " << r.message() << "\n";
    return kFileError;
  }
  std::cout << "algebra: ok (dim " << f.algebra.dim << ")\n";
  if (!f.split) {
    std::cout << "splitting: none given\n";
    return kOk;
  }
  if (auto r = validate_splitting(f.algebra, *f.split); !r.ok) {
    std::cout << "splitting: FAIL " << r.message() << "\n";
    return kFileError;
  }
  const SplitConstants sc = build_split_constants(f.algebra, *f.split);
  std::cout << "splitting: ok\nclass: " << to_string(classify_splitting(sc)) << "\ne: " << to_string(coeff_e(sc))
            << "\ne': " << to_string(coeff_e_prime(sc)) << "\n";
  return kOk;
}

struct Check {
  bool ok = true;
  double maxErr = 0;
  void observe(double err, double tol) {
    maxErr = std::max(maxErr, err);
    if (!(err <= tol)) ok = false;
  }
};

int run_verify(long pmax) {
  bool all = true;
  const auto report = [&](const std::string& name, const Check& c) {
    std::cout << (c.ok ? "PASS " : "FAIL ") << name << " max_err=" << real_text(c.maxErr) << "\n";
    all = all && c.ok;
  };

  Check dedekind;
  for (long p = 1; p <= pmax; ++p)
    for (long q = 0; q < p; ++q)
      if (gcd(p, q) == 1) {
        const double exact = dedekind_sum_fast(q, p).get_d();
        dedekind.observe(std::abs(dedekind_numeric(q, p) - exact), 1e-12 * static_cast<double>(p));
        dedekind.observe(std::abs(Rational(dedekind_sum_direct(q, p) - dedekind_sum_fast(q, p)).get_d()), 0.0);
      }
  report("dedekind direct/fast/numeric p<=" + std::to_string(pmax), dedekind);

  Check recip;
  recip.ok = reciprocity_check(pmax).ok;
  report("reciprocity p,q<=" + std::to_string(pmax), recip);

  Check harmonic;
  for (long p = 1; p <= pmax; ++p) {
    const Real x = to_real(make_rational(1, p));
    harmonic.observe(static_cast<double>(abs(harmonic_real(x).value - harmonic_integral(x).value)), 1e-10);
  }
  report("harmonic_real vs integral p<=" + std::to_string(pmax), harmonic);

  Check pairing;
  const FormExpr kernel = parse_form("Dt(b3) * DeltaC(b2,b3) * EtaC(b2,b3;0,1)");
  for (long p = 1; p <= std::min(pmax, 5L); ++p)
    for (long q = 1; q <= std::max(1L, p - 1); ++q)
      if (gcd(p, q) == 1) {
        const GluingMatrix g = canonical_mn(p, q);
        const Rational exact = glue_kernels(kernel, {2, 3}, kernel, {2, 3}, {0, 1}, g);
        const double num = circle_pairing_numeric({}, {}, g, QuadratureSpec::make(240 * p)).to_double();
        pairing.observe(std::abs(num - exact.get_d()), 1e-3);
      }
  report("psi12 kernel lattice sum vs smeared quadrature p<=5", pairing);

  Check pipeline;
  auto [alg, split] = drinfeld_double(two_dim_bialgebra());
  const SplitConstants sc = build_split_constants(alg, split);
  for (long p = 1; p <= std::min(pmax, 20L); ++p)
    for (long q = 0; q < std::max(1L, p); ++q)
      if (gcd(p, q) == 1) {
        const LensSpace lens{canonical_mn(p, q)};
        pipeline.observe(std::abs(Rational(end_to_end_weight_mt(lens, sc) - two_loop_weight_mt(lens.g, coeff_e(sc))).get_d()), 0.0);
      }
  report("diagram pipeline vs closed form p<=20", pipeline);

  return all ? kOk : kVerifyFailed;
}

int run_pipeline(long p, long q, const std::optional<long>& m, const std::optional<long>& n, const std::string& algebra,
                 bool unitE, bool dumpKernels) {
  const GluingMatrix g = lens_gluing(p, q, m, n);
  const LieData d = load_lie_data(algebra, unitE);
  if (d.cls != SplittingClass::ManinTriple) throw AlgebraError("pipeline needs a Manin triple splitting");
  if (dumpKernels) {
    for (const auto& diag : catalogue())
      for (const auto& t : evaluate_diagram(diag, Rep::A)) std::cout << "kernel " << t.to_string() << "\n";
  }
  if (g.p == 0) {
    std::cout << "Gamma1_2b x Gamma1_2b : " << to_string(psi12_pairing_coefficient(g)) << " (psi12 coefficient)\n";
    return kOk;
  }
  const PipelineResult r = end_to_end_trace(g, d.sc);
  const Rational scale = d.unitE ? Rational(1 / d.e) : Rational(1);
  for (const auto& e : r.trace) std::cout << e.aSide << " x " << e.bSide << " : " << to_string(e.value * scale) << "\n";
  std::cout << "total : " << to_string(r.weight * scale) << "\n";
  const Rational closed = two_loop_weight_mt(g, d.e) * scale;
  std::cout << "closed form : " << to_string(closed) << (closed == r.weight * scale ? " (agree)" : " (DISAGREE)") << "\n";
  return closed == r.weight * scale ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-loop Theta weights of split Chern-Simons theory on lens spaces"};
  app.require_subcommand(1);

  long p = 0, q = 1, pmax = 10;
  std::optional<long> m, n;
  std::string algebra, weightFormat = "plain", tableFormat = "csv", variantName = "theorem", file;
  bool unitE = false, dumpKernels = false;

  const std::map<std::string, NmtVariant> variants{{"theorem", NmtVariant::Theorem}, {"seff", NmtVariant::SeffEq}};
  const auto add_lens = [&](CLI::App* c) {
    c->add_option("--p", p, "lens parameter p >= 0")->required();
    c->add_option("--q", q, "lens parameter q, coprime to p")->required();
    c->add_option("--m", m, "gluing entry m (default: canonical)");
    c->add_option("--n", n, "gluing entry n (default: canonical)");
  };
  const auto add_lie = [&](CLI::App* c) {
    c->add_option("--algebra", algebra, "algebra JSON file (default: Drinfeld double, e = 2)");
    c->add_flag("--unit-e", unitE, "report the weight divided by e");
  };

  auto* weight = app.add_subcommand("weight", "exact two-loop weight of L(p,q)");
  add_lens(weight);
  add_lie(weight);
  weight->add_option("--variant", variantName, "non-Manin reading: theorem|seff")
      ->check(CLI::IsMember({"theorem", "seff"}));
  weight->add_option("--format", weightFormat, "csv|json|plain")->check(CLI::IsMember({"csv", "json", "plain"}));

  auto* table = app.add_subcommand("table", "weights for all coprime 0 <= q < p <= pmax");
  table->add_option("--pmax", pmax, "largest p")->required();
  add_lie(table);
  table->add_option("--variant", variantName, "non-Manin reading: theorem|seff")
      ->check(CLI::IsMember({"theorem", "seff"}));
  table->add_option("--format", tableFormat, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* check = app.add_subcommand("algebra-check", "validate an algebra file and classify its splitting");
  check->add_option("file", file, "algebra JSON file")->required();

  auto* verify = app.add_subcommand("verify", "run the numerical oracle suite");
  verify->add_option("--pmax", pmax, "largest p for the sweeps (default 10)");

  auto* pipeline = app.add_subcommand("pipeline", "diagram-by-diagram trace of the glued two-loop weight");
  add_lens(pipeline);
  add_lie(pipeline);
  pipeline->add_flag("--dump-kernels", dumpKernels, "print the evaluated A-side catalogue first");

  CLI11_PARSE(app, argc, argv);

  try {
    const NmtVariant variant = variants.at(variantName);
    if (weight->parsed()) return run_weight(p, q, m, n, algebra, variant, weightFormat, unitE);
    if (table->parsed()) return run_table(pmax, algebra, variant, tableFormat, unitE);
    if (check->parsed()) return run_algebra_check(file);
    if (verify->parsed()) return run_verify(pmax);
    if (pipeline->parsed()) return run_pipeline(p, q, m, n, algebra, unitE, dumpKernels);
  } catch (const InvalidLensData& e) {
    std::cerr << "invalid lens data: " << e.what() << "\n";
    return kInvalidLens;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kFileError;
  } catch (const AlgebraError& e) {
    std::cerr << "algebra error: " << e.what() << "\n";
    return kFileError;
  } catch (const ConvergenceError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kOk;
}
