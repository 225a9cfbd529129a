// Serial reference vs OpenMP map over independent trajectories.
#include <benchmark/benchmark.h>

#include "monopole/batch.hpp"
#include "monopole/dynamics.hpp"
#include "monopole/verify.hpp"

namespace {

using namespace monopole;

double run_case(std::size_t i) {
  verify::Rng rng(verify::case_seed(42, 2, i));
  const auto s0 = verify::sample_yang_state(rng);
  const auto traj = dynamics::simulate_yang(s0, 2.0, 1e-3);
  return traj.states.back()[4];
}

void BM_YangSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(batch::serial_map(n, run_case));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_YangParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(batch::parallel_map(n, run_case));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Battery(benchmark::State& state) {
  verify::BatteryConfig cfg;
  cfg.count = 10;
  cfg.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(verify::run_battery(cfg));
}

}  // namespace

BENCHMARK(BM_YangSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_YangParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Battery)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
