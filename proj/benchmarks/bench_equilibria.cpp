#include <benchmark/benchmark.h>

#include "nlci/equilibria.hpp"
#include "nlci/grid.hpp"
#include "nlci/model.hpp"

static void SolveEquilibrium(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nlci::Grid grid = nlci::build_grid(n);
  const nlci::ModelConfig cfg(nlci::DiffusionSpec::saturating(),
                              nlci::NonlinearitySpec::cubic(), 6.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlci::solve_equilibrium(cfg, 1, +1, grid));
  }
}
BENCHMARK(SolveEquilibrium)->Arg(255)->Arg(1023)->Unit(benchmark::kMillisecond);

static void EnumerateEquilibria(benchmark::State& state) {
  const nlci::Grid grid = nlci::build_grid(1023);
  const double lambda = static_cast<double>(state.range(0));
  const nlci::ModelConfig cfg(nlci::DiffusionSpec::saturating(),
                              nlci::NonlinearitySpec::cubic(), lambda);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlci::enumerate_equilibria(cfg, grid));
  }
}
BENCHMARK(EnumerateEquilibria)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
