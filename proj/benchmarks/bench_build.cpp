#include <benchmark/benchmark.h>

#include "torhom/homology.hpp"

using namespace torhom;

namespace {

void BM_EnumerateGroup(benchmark::State& state) {
  auto d = coxeter_diagram(state.range(0) == 0 ? "A4" : "B4");
  for (auto _ : state) {
    auto w = enumerate_weyl_group(d);
    benchmark::DoNotOptimize(w->size());
  }
}

void BM_BuildSalvetti(benchmark::State& state) {
  auto ctx = make_group_context(parse_type_tag("B3"));
  for (auto _ : state) {
    auto c = build_salvetti_complex(ctx);
    benchmark::DoNotOptimize(c.total_cells());
  }
}

void BM_BuildToric(benchmark::State& state) {
  auto ctx = make_group_context(parse_type_tag("A~3"));
  for (auto _ : state) {
    auto c = build_toric_complex(ctx);
    benchmark::DoNotOptimize(c.total_cells());
  }
}

void BM_ToricHomology(benchmark::State& state) {
  auto ctx = make_group_context(parse_type_tag("A~3"));
  auto c = std::make_shared<ChainComplex>(build_toric_complex(ctx));
  for (auto _ : state) {
    ComplexHomology h(c);
    benchmark::DoNotOptimize(h.betti(3));
  }
}

}  // namespace

BENCHMARK(BM_EnumerateGroup)->Arg(0)->Arg(1);
BENCHMARK(BM_BuildSalvetti);
BENCHMARK(BM_BuildToric);
BENCHMARK(BM_ToricHomology);

BENCHMARK_MAIN();
