#include <benchmark/benchmark.h>

#include <random>

#include "titshom/bar_fq.hpp"
#include "titshom/chain_complex.hpp"
#include "titshom/fq_building.hpp"
#include "titshom/integral_symbols.hpp"
#include "titshom/part6.hpp"
#include "titshom/smith.hpp"

using namespace titshom;

static DenseIntMatrix random_dense(size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-9, 9);
  DenseIntMatrix a(n, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) a(r, c) = Integer(entry(rng));
  return a;
}

static void BM_SnfDense(benchmark::State& state) {
  std::mt19937_64 rng(42);
  auto a = random_dense(static_cast<size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(snf_dense(a, state.range(1) != 0));
}
BENCHMARK(BM_SnfDense)->Args({8, 0})->Args({8, 1})->Args({24, 0});

static void BM_SnfBuildingBoundary(benchmark::State& state) {
  TitsBuilding b(3, static_cast<int>(state.range(0)));
  auto d = b.complex().boundary(1);
  for (auto _ : state) benchmark::DoNotOptimize(snf(d));
  state.counters["cols"] = static_cast<double>(d.cols());
}
BENCHMARK(BM_SnfBuildingBoundary)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_BuildingHomology(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), q = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto c = building_complex(n, q);
    benchmark::DoNotOptimize(homology(c, n - 2));
  }
}
BENCHMARK(BM_BuildingHomology)->Args({3, 2})->Args({3, 3})->Args({4, 2})->Unit(benchmark::kMillisecond);

static void BM_BarExactness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_bar_exactness(3, 2));
}
BENCHMARK(BM_BarExactness)->Unit(benchmark::kMillisecond);

static void BM_AshRudolph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::vector<ApartmentSymbol> symbols;
  while (symbols.size() < 64) {
    auto m = random_dense(static_cast<size_t>(n), rng);
    if (determinant(m).is_zero()) continue;
    std::vector<ZVector> cols;
    for (size_t c = 0; c < m.cols(); ++c) cols.push_back(m.col(c));
    symbols.push_back(ApartmentSymbol::from_vectors(cols));
  }
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ash_rudolph(symbols[i++ % symbols.size()]));
}
BENCHMARK(BM_AshRudolph)->Arg(2)->Arg(3);

static void BM_ZComplexHomology(benchmark::State& state) {
  RestrictionSet r{static_cast<int>(state.range(0)), {}};
  for (auto _ : state) benchmark::DoNotOptimize(all_homology(zcomplex(r)));
}
BENCHMARK(BM_ZComplexHomology)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

static void BM_Part6Claims(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(part6_claims(4));
}
BENCHMARK(BM_Part6Claims)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
