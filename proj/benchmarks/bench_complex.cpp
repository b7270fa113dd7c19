#include <benchmark/benchmark.h>

#include "fillings/metrics.hpp"
#include "fillings/search.hpp"
#include "fillings/separators.hpp"
#include "fillings/triangulation.hpp"

using namespace fillings;

static void BM_CanonicalWheel(benchmark::State& state) {
  const auto W = wheel(static_cast<VertexId>(state.range(0)));
  for (auto _ : state) {
    auto c = canonical_form(W);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CanonicalWheel)->Arg(8)->Arg(16)->Arg(32);

static void BM_LipschitzWheel(benchmark::State& state) {
  const auto W = wheel(static_cast<VertexId>(state.range(0)));
  for (auto _ : state) {
    auto r = lipschitz_constant(W);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_LipschitzWheel)->Arg(16)->Arg(64)->Arg(256);

static void BM_MaxDisjointPaths(benchmark::State& state) {
  const auto W = wheel(static_cast<VertexId>(state.range(0)));
  const auto inst = make_cut_instance(W, 0, static_cast<VertexId>(state.range(0) / 2));
  for (auto _ : state) {
    auto cert = max_disjoint_paths(W, inst);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_MaxDisjointPaths)->Arg(8)->Arg(32)->Arg(128);

BENCHMARK_MAIN();
