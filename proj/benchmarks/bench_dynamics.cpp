#include <benchmark/benchmark.h>

#include "gamow/dynamics.hpp"

namespace {

using namespace gamow;

void BM_TailExponent(benchmark::State& state) {
  const ResonanceLine line(1.0, 0.1);
  const double tau = line.lifetime();
  for (auto _ : state) benchmark::DoNotOptimize(tail_exponent(line, 50.0 * tau, 500.0 * tau, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TailExponent)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_HalfLineGamowSeries(benchmark::State& state) {
  const ResonanceLine line(1.0, 0.1);
  std::vector<double> times(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = -20.0 + 70.0 * static_cast<double>(i) / times.size();
  const TestFunction psi = RationalHardyFunction::detector(10.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(gamow_amplitude_series(line, psi, times, SpectralSupport::HalfLine, 1e-10));
}
BENCHMARK(BM_HalfLineGamowSeries)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
