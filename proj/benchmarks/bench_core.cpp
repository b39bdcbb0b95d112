// Throughput of the hot loops: enumeration, pivot steps, Loewner traces,
// hull filling.

#include <benchmark/benchmark.h>

#include "sawlab/brownian.hpp"
#include "sawlab/lattice.hpp"
#include "sawlab/mcsaw.hpp"
#include "sawlab/sle.hpp"

using namespace sawlab;

static void BM_CountSaws(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lattice::count_saws(n));
}
BENCHMARK(BM_CountSaws)->DenseRange(10, 14, 2)->Unit(benchmark::kMillisecond);

static void BM_PivotStep(benchmark::State& state) {
  mcsaw::PivotChain chain(int(state.range(0)));
  auto rng = make_rng(1);
  chain.thermalize(10 * state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(chain.step(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PivotStep)->Arg(100)->Arg(1000);

static void BM_ChordalTrace(benchmark::State& state) {
  auto rng = make_rng(2);
  const int N = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sle::chordal_trace(8.0 / 3.0, 1.0, N, rng));
}
BENCHMARK(BM_ChordalTrace)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

static void BM_HullFill(benchmark::State& state) {
  auto rng = make_rng(3);
  const auto loop = brownian::rooted_loop(1.0, 100000, rng);
  const double res = loop.diameter() / double(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brownian::hull_fill({loop}, res));
}
BENCHMARK(BM_HullFill)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
