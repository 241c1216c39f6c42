#include <benchmark/benchmark.h>

#include "gamow/fitting.hpp"

namespace {

using namespace gamow;

std::vector<double> energy_grid(const ResonanceLine& line) {
  std::vector<double> e(201);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = line.e_r() + line.gamma() * (-10.0 + 0.1 * static_cast<double>(i));
  return e;
}

void BM_FitLineshape(benchmark::State& state) {
  const ResonanceLine line(1.0, 0.01);
  const auto sample = generate_lineshape(line, energy_grid(line), 2.5e-5, 0.01, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fit_lineshape(sample));
}
BENCHMARK(BM_FitLineshape);

void BM_FitDecay(benchmark::State& state) {
  const ResonanceLine line(1.0, 0.01);
  std::vector<double> edges(21);
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = 25.0 * static_cast<double>(i);
  const auto counts = generate_decay_counts(line, edges, 1'000'000, 2, true);
  for (auto _ : state) benchmark::DoNotOptimize(fit_decay_rate(counts));
}
BENCHMARK(BM_FitDecay);

void BM_RoundTrip(benchmark::State& state) {
  const ResonanceLine line(1.0, 0.01);
  RoundTripConfig config;
  config.energies = energy_grid(line);
  config.amplitude_scale = 2.5e-5;
  config.noise_sigma = 0.01;
  for (int i = 0; i <= 20; ++i) config.bin_edges.push_back(25.0 * i);
  config.replicas = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_round_trip(line, config));
}
BENCHMARK(BM_RoundTrip)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
