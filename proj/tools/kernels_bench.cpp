// SPDX-License-Identifier: Apache-2.0
// Serial reference against OpenMP kernels. Results are identical by construction; only time differs.
#include <benchmark/benchmark.h>

#include "dronenet/density.hpp"
#include "dronenet/simulator.hpp"

using namespace dronenet;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_Simulation(benchmark::State& state) {
  SimConfig cfg;
  cfg.lambda0 = 1e-6;
  cfg.observation_radius = 10000.0;
  cfg.times = {0.0, 40.0, 80.0};
  cfg.model = MobilityModelSpec::rw(12.5, ScalarDistribution::rayleigh_mean(500.0));
  cfg.realizations = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg, mode(state)));
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}

void BM_NetDisplacement(benchmark::State& state) {
  const auto spec = MobilityModelSpec::rwp(12.5, ScalarDistribution::rayleigh_mean(500.0),
                                           ScalarDistribution::exponential(5.0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_net_displacement(spec, 300.0, 100000, Rng(1), mode(state)));
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}

void BM_DensityOracle(benchmark::State& state) {
  OracleOptions opts;
  opts.realizations = 2000;
  opts.parallel = state.range(0) != 0;
  const auto spec = MobilityModelSpec::rw(12.5, ScalarDistribution::rayleigh_mean(500.0));
  for (auto _ : state) benchmark::DoNotOptimize(empirical_density_oracle(spec, 1e-3, 500.0, 50.0, opts, Rng(2)));
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_Simulation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NetDisplacement)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DensityOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
