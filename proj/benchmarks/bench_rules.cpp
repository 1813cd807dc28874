#include <benchmark/benchmark.h>

#include "mtlz/families.hpp"
#include "mtlz/rules.hpp"

using namespace mtlz;

static void BM_IsCandidate(benchmark::State& state, const char* spec) {
  Graph g = build(spec);
  for (auto _ : state) {
    auto rep = is_candidate(g);
    benchmark::DoNotOptimize(rep.candidate);
  }
}
BENCHMARK_CAPTURE(BM_IsCandidate, catalog1441_2, "Catalog1441_2");
BENCHMARK_CAPTURE(BM_IsCandidate, g1463, "G1463");
BENCHMARK_CAPTURE(BM_IsCandidate, clebsch16, "Clebsch16");

static void BM_ZeroTwo(benchmark::State& state) {
  Graph g = build("Clebsch16");
  for (auto _ : state) benchmark::DoNotOptimize(is_zero_two_graph(g));
}
BENCHMARK(BM_ZeroTwo);

BENCHMARK_MAIN();
