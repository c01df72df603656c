// Serial reference vs OpenMP for the Monte Carlo kernels.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "opinionfp/kernels.hpp"

namespace {

std::vector<double> opinions(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

template <bool Parallel>
void BM_InteractPairs(benchmark::State& state) {
  std::vector<double> x = opinions(static_cast<std::size_t>(state.range(0)));
  std::uint64_t key = 1;
  for (auto _ : state) {
    const std::size_t rejected = Parallel ? opinionfp::kernels::interact_pairs_omp(x, 0.005, 0.0025, key++)
                                          : opinionfp::kernels::interact_pairs_serial(x, 0.005, 0.0025, key++);
    benchmark::DoNotOptimize(rejected);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) / 2);
}

template <bool Parallel>
void BM_BinCounts(benchmark::State& state) {
  const std::vector<double> x = opinions(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto counts = Parallel ? opinionfp::kernels::bin_counts_omp(x, 50) : opinionfp::kernels::bin_counts_serial(x, 50);
    benchmark::DoNotOptimize(counts.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_InteractPairs<false>)->Name("interact_pairs/serial")->RangeMultiplier(10)->Range(10000, 1000000);
BENCHMARK(BM_InteractPairs<true>)->Name("interact_pairs/omp")->RangeMultiplier(10)->Range(10000, 1000000);
BENCHMARK(BM_BinCounts<false>)->Name("bin_counts/serial")->RangeMultiplier(10)->Range(10000, 1000000);
BENCHMARK(BM_BinCounts<true>)->Name("bin_counts/omp")->RangeMultiplier(10)->Range(10000, 1000000);

BENCHMARK_MAIN();
