#include <benchmark/benchmark.h>

#include "selbias/oracle.hpp"
#include "selbias/random.hpp"

using namespace selbias;

static void BM_SampleAndVerify(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const Scenario general{ScenarioKind::general};
  std::uint64_t i = 0;
  for (auto _ : state) {
    RandomStream rng(1, i++);
    benchmark::DoNotOptimize(verify_bound(sample_joint(k, rng, SelectionStructure::free), general));
  }
}
BENCHMARK(BM_SampleAndVerify)->Arg(2)->Arg(4)->Arg(8);

static void BM_RunVerification(benchmark::State& state) {
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_verification(3, Scenario{ScenarioKind::general}, 10'000, 1, threads));
  }
}
BENCHMARK(BM_RunVerification)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_TightnessSearch(benchmark::State& state) {
  const Scenario sc{ScenarioKind::s_equals_u_directional, Direction::increased};
  for (auto _ : state) benchmark::DoNotOptimize(tightness_search(2, sc, 10'000, 1));
}
BENCHMARK(BM_TightnessSearch)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
