#include <benchmark/benchmark.h>

#include "nlci/exact_det.hpp"

static void AlternatingDeterminant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlci::exact_det(nlci::build_alternating(n)));
  }
}
BENCHMARK(AlternatingDeterminant)->Arg(10)->Arg(25)->Arg(50);

static void TridiagDeterminant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlci::exact_det(nlci::build_tridiag(n)));
  }
}
BENCHMARK(TridiagDeterminant)->Arg(20)->Arg(60);
