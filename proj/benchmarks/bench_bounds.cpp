#include <benchmark/benchmark.h>

#include "selbias/bounds.hpp"
#include "selbias/summaries.hpp"

using namespace selbias;

static void BM_GeneralBound(benchmark::State& state) {
  double x = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounding_factor(GeneralParams{x, 1.7, 2.0, 1.5}).value);
    x += 1e-9;
  }
}
BENCHMARK(BM_GeneralBound);

static void BM_SelectedBound(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bounding_factor(SelectedPopulationParams{2.37, Association::approx_su, 2.37}).value);
  }
}
BENCHMARK(BM_SelectedBound);

static void BM_SummaryAllScenarios(benchmark::State& state) {
  double rr = 1.5;
  for (auto _ : state) {
    for (const auto& sc : all_scenarios()) benchmark::DoNotOptimize(summary_value(sc, rr));
    rr += 1e-9;
  }
}
BENCHMARK(BM_SummaryAllScenarios);
