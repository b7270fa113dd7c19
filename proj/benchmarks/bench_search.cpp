#include <benchmark/benchmark.h>

#include "fillings/search.hpp"

using namespace fillings;

// Full canonical enumeration; the vertex cap is n+1 so a run stays in the
// millisecond range and the iteration count remains meaningful.
static void BM_EnumerateFillings(benchmark::State& state) {
  const auto n = static_cast<VertexId>(state.range(0));
  for (auto _ : state) {
    auto er = enumerate_fillings(n, n + 1);
    benchmark::DoNotOptimize(er);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnumerateFillings)->Arg(4)->Arg(5)->Arg(6);

static void BM_ComputeD(benchmark::State& state) {
  for (auto _ : state) {
    auto res = compute_D(static_cast<int>(state.range(0)), Rational(0));
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_ComputeD)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
