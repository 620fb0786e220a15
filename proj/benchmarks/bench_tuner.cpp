#include <cfq/loss_tuner.hpp>

#include <benchmark/benchmark.h>

#include <numbers>

using namespace cfq::tune;

static void BM_Evaluate(benchmark::State& state) {
  const std::vector<double> angles(7, std::numbers::pi / 4);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(2, angles));
}
BENCHMARK(BM_Evaluate);

static void BM_SolveFullGrid(benchmark::State& state) {
  const auto problem = default_problem(2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_equal_loss(problem));
}
BENCHMARK(BM_SolveFullGrid)->Unit(benchmark::kMillisecond)->Iterations(1);
