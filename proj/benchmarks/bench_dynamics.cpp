#include <benchmark/benchmark.h>

#include "nlci/dynamics.hpp"
#include "nlci/grid.hpp"
#include "nlci/model.hpp"

static void SemilinearSteps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nlci::Grid grid = nlci::build_grid(n);
  const nlci::ModelConfig cfg(nlci::DiffusionSpec::saturating(),
                              nlci::NonlinearitySpec::cubic(), 6.0);
  const auto u0 = nlci::GridFunction::sample(grid, [](double x) { return 0.2 * std::sin(x); });
  nlci::IntegrationOptions opts;
  opts.dt = 1e-3;
  opts.stride = 1000000;  // suppress snapshots; measure stepping only
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlci::integrate_semilinear(u0, cfg, 1.0, opts));
  }
}
BENCHMARK(SemilinearSteps)->Arg(255)->Arg(1023)->Unit(benchmark::kMillisecond);

static void QuasilinearSteps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nlci::Grid grid = nlci::build_grid(n);
  const nlci::ModelConfig cfg(nlci::DiffusionSpec::saturating(),
                              nlci::NonlinearitySpec::cubic(), 6.0);
  const auto u0 = nlci::GridFunction::sample(grid, [](double x) { return 0.2 * std::sin(x); });
  nlci::IntegrationOptions opts;
  opts.dt = 1e-3;
  opts.stride = 1000000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlci::integrate_quasilinear(u0, cfg, 1.0, opts));
  }
}
BENCHMARK(QuasilinearSteps)->Arg(255)->Arg(1023)->Unit(benchmark::kMillisecond);
