#include <benchmark/benchmark.h>

#include "fillings/plmesh.hpp"

using namespace fillings;

static void BM_DirichletPlan(benchmark::State& state) {
  const auto S = square_surface();
  for (auto _ : state) {
    auto plan = dirichlet_plan(S, state.range(0));
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_DirichletPlan)->Arg(20)->Arg(500)->Arg(20000);

static void BM_BalancedSquare(benchmark::State& state) {
  const auto S = square_surface();
  for (auto _ : state) {
    auto M = balanced_triangulation(S, state.range(0));
    benchmark::DoNotOptimize(M);
  }
  state.SetLabel("k=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_BalancedSquare)->Arg(5)->Arg(12)->Arg(29);

static void BM_ChooseK(benchmark::State& state) {
  const auto S = hemisphere_surface();
  for (auto _ : state) {
    auto k = choose_k(S, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(BM_ChooseK)->Arg(48)->Arg(192);

BENCHMARK_MAIN();
