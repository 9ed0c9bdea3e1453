#include <benchmark/benchmark.h>

#include <vector>

#include "kglab/dynamics/halfwave.hpp"
#include "kglab/dynamics/initial_data.hpp"
#include "kglab/harness/shell.hpp"
#include "kglab/nonlinear/system.hpp"
#include "kglab/util/random.hpp"
#include "kglab/variation/pvariation.hpp"

namespace kglab {

void BM_forward_transform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto lattice = spectral::FrequencyLattice::make({2, 64.0, n});
  util::Rng rng(1);
  std::vector<double> values(lattice->size());
  for (auto& v : values) v = rng.uniform(-1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::forward_transform(lattice, values));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(lattice->size()));
}

void BM_nonlinearity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto lattice = spectral::FrequencyLattice::make({2, 64.0, n});
  const auto data = dynamics::gaussian_data(lattice, {1.0}, 1e-3, 3.0);
  const auto system = nonlinear::MassSystem::scalar_square(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear::evaluate_nonlinearity(system, data.position));
}

void BM_lawson_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto lattice = spectral::FrequencyLattice::make({2, 64.0, n});
  const auto system = nonlinear::MassSystem::scalar_square(1.0);
  auto st = dynamics::initial_pair(dynamics::gaussian_data(lattice, {1.0}, 1e-3, 3.0), system);
  dynamics::LawsonStepper stepper(system, lattice, 0.01);
  for (auto _ : state) {
    stepper.step(st);
    benchmark::ClobberMemory();
  }
}

void BM_p_variation(benchmark::State& state) {
  util::Rng rng(2);
  variation::SampledPath<double> path;
  for (long i = 0; i < state.range(0); ++i) {
    path.times.push_back(static_cast<double>(i));
    path.values.push_back(rng.uniform(-1, 1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(variation::p_variation(path, 2.0));
}

void BM_shell_volume(benchmark::State& state) {
  harness::ShellSpec spec;
  spec.r = spec.R = 64.0;
  spec.delta = spec.Delta = 0.05;
  spec.tube = 8.0;
  spec.xi0_norm = 100.0;
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harness::estimate_shell_volume(spec, samples, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_forward_transform)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_nonlinearity)->Arg(64)->Arg(256);
BENCHMARK(BM_lawson_step)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_p_variation)->Arg(64)->Arg(512);
BENCHMARK(BM_shell_volume)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace kglab
BENCHMARK_MAIN();
