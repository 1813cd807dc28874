#include <benchmark/benchmark.h>

#include "mtlz/families.hpp"
#include "mtlz/orientation.hpp"
#include "mtlz/search.hpp"

using namespace mtlz;

static void BM_EnumerateN9(benchmark::State& state) {
  for (auto _ : state) {
    SearchConfig cfg;
    cfg.n = 9;
    Catalog c = enumerate_candidates(cfg);
    benchmark::DoNotOptimize(c.entries.size());
  }
}
BENCHMARK(BM_EnumerateN9)->Unit(benchmark::kMillisecond);

static void BM_BranchSearch1441_2(benchmark::State& state) {
  Graph g = build("Catalog1441_2");
  for (auto _ : state) {
    auto res = branch_search(g);
    benchmark::DoNotOptimize(res.classes.size());
  }
}
BENCHMARK(BM_BranchSearch1441_2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
