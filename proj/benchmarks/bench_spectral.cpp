#include <benchmark/benchmark.h>

#include "nlci/equilibria.hpp"
#include "nlci/grid.hpp"
#include "nlci/model.hpp"
#include "nlci/spectral.hpp"

namespace {

nlci::ModelConfig model(double lambda) {
  return nlci::ModelConfig(nlci::DiffusionSpec::saturating(), nlci::NonlinearitySpec::cubic(),
                           lambda);
}

}  // namespace

static void AssembleOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nlci::Grid grid = nlci::build_grid(n);
  const nlci::ModelConfig cfg = model(6.0);
  const nlci::Equilibrium eq = nlci::solve_equilibrium(cfg, 2, +1, grid);
  const nlci::OperatorSpec spec = nlci::linearization(eq, cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlci::assemble(spec, grid));
  }
}
BENCHMARK(AssembleOperator)->Arg(511)->Arg(1023)->Arg(2047);

static void TopEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nlci::Grid grid = nlci::build_grid(n);
  const nlci::ModelConfig cfg = model(6.0);
  const nlci::Equilibrium eq = nlci::solve_equilibrium(cfg, 2, +1, grid);
  const nlci::AssembledOperator op = nlci::assemble(nlci::linearization(eq, cfg), grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlci::eigenvalues_only(op, 10));
  }
}
BENCHMARK(TopEigenvalues)->Arg(511)->Arg(1023)->Arg(2047)->Arg(4095);

static void EigenPairs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nlci::Grid grid = nlci::build_grid(n);
  const nlci::ModelConfig cfg = model(6.0);
  const nlci::Equilibrium eq = nlci::solve_equilibrium(cfg, 2, +1, grid);
  const nlci::AssembledOperator op = nlci::assemble(nlci::linearization(eq, cfg), grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlci::eigenpairs(op, 10));
  }
}
BENCHMARK(EigenPairs)->Arg(511)->Arg(1023);
