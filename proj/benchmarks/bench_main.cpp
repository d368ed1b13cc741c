#include <benchmark/benchmark.h>

#include <cmath>

#include "kpr/analytic.hpp"
#include "kpr/finite_model.hpp"
#include "kpr/half_line.hpp"
#include "kpr/mc.hpp"

namespace {

kpr::ModelParams base_params(int N) {
  kpr::ModelParams p;
  p.N = N;
  p.alpha = 1.0;
  p.energy_E = std::log(3.0);
  p.delta = 2.0;
  p.sigma = 1.0;
  p.b = std::log(2.0);
  return p;
}

void BM_PresExact(benchmark::State& state) {
  const kpr::ModelParams p = base_params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kpr::pres_exact(p));
}
BENCHMARK(BM_PresExact)->Arg(20)->Arg(100)->Arg(1000);

void BM_SigmaSweep(benchmark::State& state) {
  const kpr::ModelParams p = base_params(20);
  std::vector<double> grid;
  for (int i = 0; i <= 60; ++i) grid.push_back(-2.0 + 0.1 * i);
  for (auto _ : state)
    benchmark::DoNotOptimize(kpr::sweep_sigma(p, grid, 1));
}
BENCHMARK(BM_SigmaSweep);

void BM_AnalyticReport(benchmark::State& state) {
  const kpr::ModelParams p = base_params(20);
  for (auto _ : state) benchmark::DoNotOptimize(kpr::compute_report(p));
}
BENCHMARK(BM_AnalyticReport);

void BM_TalbotInversion(benchmark::State& state) {
  kpr::ModelParams p;
  p.alpha = 1.0;
  p.energy_E = 1.0;
  p.delta = 0.5;
  p.sigma = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(kpr::talbot_invert(5, 5.0, p));
}
BENCHMARK(BM_TalbotInversion);

void BM_SimulateLigand(benchmark::State& state) {
  const kpr::ModelParams p = base_params(8);
  std::uint64_t trial = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(kpr::simulate_ligand(p, 42, trial++));
}
BENCHMARK(BM_SimulateLigand);

}  // namespace

BENCHMARK_MAIN();
