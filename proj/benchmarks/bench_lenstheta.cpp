#include "lenstheta/forms.hpp"
#include "lenstheta/gluing.hpp"
#include "lenstheta/numtheory.hpp"
#include "lenstheta/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace lenstheta;

static void BM_DedekindDirect(benchmark::State& st) {
  const long p = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(dedekind_sum_direct(p - 1, p));
}
BENCHMARK(BM_DedekindDirect)->Arg(101)->Arg(1009)->Arg(10007);

static void BM_DedekindFast(benchmark::State& st) {
  const long p = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(dedekind_sum_fast(p - 1, p));
}
BENCHMARK(BM_DedekindFast)->Arg(101)->Arg(1009)->Arg(10007);

static void BM_NormalizeThetaProduct(benchmark::State& st) {
  const FormExpr h12 = propagator(PropagatorKind::Horizontal, bulk(1), bulk(2));
  const FormExpr h21 = propagator(PropagatorKind::Horizontal, bulk(2), bulk(1));
  for (auto _ : st) benchmark::DoNotOptimize(regularize(wedge_all({h12, h12, h21})));
}
BENCHMARK(BM_NormalizeThetaProduct);

static void BM_EndToEnd(benchmark::State& st) {
  auto [alg, split] = drinfeld_double(two_dim_bialgebra());
  const SplitConstants sc = build_split_constants(alg, split);
  const LensSpace lens{canonical_mn(st.range(0), 2)};
  for (auto _ : st) benchmark::DoNotOptimize(end_to_end_weight_mt(lens, sc));
}
BENCHMARK(BM_EndToEnd)->Arg(5)->Arg(49);

static void BM_ClosedForm(benchmark::State& st) {
  const GluingMatrix g = canonical_mn(st.range(0), 2);
  for (auto _ : st) benchmark::DoNotOptimize(two_loop_weight_mt(g, 2));
}
BENCHMARK(BM_ClosedForm)->Arg(5)->Arg(49);
BENCHMARK_MAIN();
