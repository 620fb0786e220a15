#include <cfq/counterfactuality.hpp>
#include <cfq/propagate.hpp>
#include <cfq/protocols.hpp>

#include <benchmark/benchmark.h>

using namespace cfq;
using namespace cfq::protocols;

static void BM_SalihFock(benchmark::State& state) {
  const auto p = build_salih(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                             true, BobAction::Block);
  const auto in = initial_state(p.circuit);
  for (auto _ : state) benchmark::DoNotOptimize(run_fock(p.circuit, in));
  state.counters["stages"] = static_cast<double>(p.circuit.stage_count());
}
BENCHMARK(BM_SalihFock)->Args({2, 4})->Args({5, 10})->Args({20, 20});

static void BM_ZenoBuildAndRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto p = build_zeno_chain(n, BobAction::Block);
    benchmark::DoNotOptimize(run_fock(p.circuit, initial_state(p.circuit)));
  }
}
BENCHMARK(BM_ZenoBuildAndRun)->RangeMultiplier(10)->Range(10, 10000);

static void BM_WeakTraceSalih(benchmark::State& state) {
  const auto p = build_salih(static_cast<int>(state.range(0)), 4, true, BobAction::Block);
  const auto in = initial_state(p.circuit);
  for (auto _ : state) benchmark::DoNotOptimize(cf::weak_trace(p.circuit, in, "D1"));
}
BENCHMARK(BM_WeakTraceSalih)->Arg(2)->Arg(8);

static void BM_HistoryFamilySalih(benchmark::State& state) {
  const auto p = build_salih(static_cast<int>(state.range(0)), 3, true, BobAction::Block);
  const auto in = initial_state(p.circuit);
  const auto cuts = cf::default_cuts(p.circuit);
  const auto cg = cf::default_coarse_graining(p.circuit);
  for (auto _ : state) benchmark::DoNotOptimize(cf::build_history_family(p.circuit, in, cuts, cg));
}
BENCHMARK(BM_HistoryFamilySalih)->Arg(1)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
