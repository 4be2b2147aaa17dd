// Serial reference loop vs the OpenMP kernel on the same configurations.
// Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "djwalk/montecarlo.hpp"

namespace {

djwalk::TrialConfig make_config(int which, long long experiments) {
  djwalk::TrialConfig c;
  c.experiments = experiments;
  c.seed = 1;
  switch (which) {
    case 0:
      c.strategy = djwalk::McStrategy::QuantumDJ;
      c.m = 2;
      c.nu = 0.5;
      break;
    case 1:
      c.strategy = djwalk::McStrategy::ClassicalDJ;
      c.m = 3;
      break;
    default:
      c.strategy = djwalk::McStrategy::QuantumEps;
      c.m = 100;
      c.epsilon = 0.1;
      break;
  }
  return c;
}

void label(benchmark::State& state) {
  static const char* names[] = {"quantum-dj", "classical-dj", "quantum-eps"};
  state.SetLabel(names[state.range(0)]);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_Serial(benchmark::State& state) {
  const djwalk::TrialConfig c = make_config(static_cast<int>(state.range(0)), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(djwalk::run_experiment_serial(c));
  label(state);
}

void BM_OpenMP(benchmark::State& state) {
  const djwalk::TrialConfig c = make_config(static_cast<int>(state.range(0)), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(djwalk::run_experiment(c));
  label(state);
}

}  // namespace

BENCHMARK(BM_Serial)->ArgsProduct({{0, 1, 2}, {1 << 17}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OpenMP)->ArgsProduct({{0, 1, 2}, {1 << 17}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
