#include <benchmark/benchmark.h>

#include <random>

#include "torhom/snf.hpp"

using namespace torhom;

namespace {

IMatrix random_matrix(int n, int span, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-span, span);
  IMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = d(rng);
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  IMatrix a = random_matrix(static_cast<int>(state.range(0)), 9, 12345);
  for (auto _ : state) {
    auto snf = smith_normal_form(a);
    benchmark::DoNotOptimize(snf.rank());
  }
}

void BM_SmithNormalFormSparseSigns(benchmark::State& state) {
  // boundary-like input: entries in {-1, 0, 1}
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> d(0, 9);
  int n = static_cast<int>(state.range(0));
  IMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int r = d(rng);
      a.at(i, j) = r == 0 ? 1 : (r == 1 ? -1 : 0);
    }
  for (auto _ : state) {
    auto snf = smith_normal_form(a);
    benchmark::DoNotOptimize(snf.rank());
  }
}

}  // namespace

BENCHMARK(BM_SmithNormalForm)->Arg(16)->Arg(40)->Arg(80);
BENCHMARK(BM_SmithNormalFormSparseSigns)->Arg(48)->Arg(144);
