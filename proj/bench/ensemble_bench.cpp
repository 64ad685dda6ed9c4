// Serial reference vs OpenMP ensemble kernels on the reference parameters.

#include <benchmark/benchmark.h>

#include <vector>

#include "glv/ensemble.hpp"

namespace {

using namespace glv;

std::vector<State3> grid(std::size_t side) {
  std::vector<State3> out;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      for (std::size_t k = 0; k < side; ++k) {
        const auto at = [side](std::size_t n) { return 0.5 + static_cast<double>(n) / static_cast<double>(side); };
        out.push_back({at(i), at(j), at(k)});
      }
    }
  }
  return out;
}

void BM_Orbits(benchmark::State& state, Execution exec) {
  const auto initial = grid(static_cast<std::size_t>(state.range(0)));
  IntegrationConfig cfg;
  cfg.t_end = 100.0;
  cfg.record_every = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(summarize_orbits(ModelKind::Linear, kReferenceParams, initial, cfg, exec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(initial.size()));
}

void BM_Lyapunov(benchmark::State& state, Execution exec) {
  const auto initial = grid(static_cast<std::size_t>(state.range(0)));
  LyapunovConfig cfg;
  cfg.t_total = 200.0;
  cfg.transient = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lyapunov_ensemble(ModelKind::Linear, kReferenceParams, initial, cfg, {}, exec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(initial.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Orbits, serial, Execution::Serial)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Orbits, parallel, Execution::Parallel)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Lyapunov, serial, Execution::Serial)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Lyapunov, parallel, Execution::Parallel)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
