#include <benchmark/benchmark.h>

#include "mtlz/canonical.hpp"
#include "mtlz/families.hpp"

using namespace mtlz;

static void BM_CanonicalForm(benchmark::State& state, const char* spec) {
  Graph g = build(spec);
  for (auto _ : state) {
    auto cf = canonical_form(g);
    benchmark::DoNotOptimize(cf.key.data());
  }
}
BENCHMARK_CAPTURE(BM_CanonicalForm, k23, "K(2,3)");
BENCHMARK_CAPTURE(BM_CanonicalForm, q3, "Q(3)");
BENCHMARK_CAPTURE(BM_CanonicalForm, catalog1441_2, "Catalog1441_2");
BENCHMARK_CAPTURE(BM_CanonicalForm, g1463, "G1463");
BENCHMARK_CAPTURE(BM_CanonicalForm, clebsch16, "Clebsch16");

BENCHMARK_MAIN();
