// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "anticonc/oracle.hpp"

namespace {

using namespace anticonc;

const ParamSet kGamma = params::Gamma{2.5, 1.5};
const ParamSet kPoisson = params::Poisson{4.0};

void BM_McTailSerial(benchmark::State& state, const ParamSet& ps) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::serial::mc_tail(ps, 1.0, n, 7));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_McTailParallel(benchmark::State& state, const ParamSet& ps) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::mc_tail(ps, 1.0, n, 7));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_GridSerial(benchmark::State& state) {
  const auto grid = oracle::refine(oracle::canonical_grid(FamilyId::StudentT));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::serial::grid_infimum(1.0, grid));
}

void BM_GridParallel(benchmark::State& state) {
  const auto grid = oracle::refine(oracle::canonical_grid(FamilyId::StudentT));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::grid_infimum(1.0, grid));
}

}  // namespace

BENCHMARK_CAPTURE(BM_McTailSerial, gamma, kGamma)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_McTailParallel, gamma, kGamma)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_McTailSerial, poisson, kPoisson)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_McTailParallel, poisson, kPoisson)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
