// Parallel kernels against their serial reference paths.

#include <benchmark/benchmark.h>

#include <vector>

#include "steklov/critical_length.hpp"
#include "steklov/extension_process.hpp"

using namespace steklov;

namespace {

std::vector<double> linear_grid(int samples) {
  std::vector<double> grid(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) grid[static_cast<std::size_t>(i)] = 0.01 + 19.99 * i / (samples - 1);
  return grid;
}

void BM_BoundCurveSerial(benchmark::State& state) {
  const auto grid = linear_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bound_curve_serial(Dimension(5), 8400, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BoundCurveParallel(benchmark::State& state) {
  const auto grid = linear_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bound_curve(Dimension(5), 8400, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(Dimension(3), 3, static_cast<int>(state.range(0))));
}

void BM_SweepParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep(Dimension(3), 3, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_BoundCurveSerial)->Arg(500)->Arg(5000);
BENCHMARK(BM_BoundCurveParallel)->Arg(500)->Arg(5000);
BENCHMARK(BM_SweepSerial)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
