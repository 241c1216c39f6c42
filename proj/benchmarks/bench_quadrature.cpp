#include <benchmark/benchmark.h>

#include "gamow/quadrature.hpp"
#include "gamow/spectral.hpp"

namespace {

using namespace gamow;

void BM_FullLinePanels(benchmark::State& state) {
  const ResonanceLine line(1.0, 0.1);
  const auto g = bw_amplitude_rational(line, AmplitudeScale::Bare);
  const ComplexIntegrand f = [&](double w) { return g(w); };
  const auto features = features_of(g);
  const double t = static_cast<double>(state.range(0)) * line.lifetime();
  for (auto _ : state) benchmark::DoNotOptimize(fourier_fullline(f, t, 1e-10, features));
}
BENCHMARK(BM_FullLinePanels)->Arg(1)->Arg(5)->Arg(50);

void BM_HalfLine(benchmark::State& state) {
  const ResonanceLine line(1.0, 0.1);
  const auto g = bw_amplitude_rational(line);
  const auto strategy = state.range(0) == 0 ? HalfLineStrategy::Auto : HalfLineStrategy::Panels;
  for (auto _ : state) benchmark::DoNotOptimize(fourier_halfline(g, -line.lifetime(), 1e-10, strategy));
}
BENCHMARK(BM_HalfLine)->Arg(0)->Arg(1);

void BM_Residue(benchmark::State& state) {
  const auto psi = RationalHardyFunction::detector(10.0);
  const ResonanceLine line(1.0, 0.1);
  const auto g = psi.function().divided_by_linear(line.z_r());
  for (auto _ : state) benchmark::DoNotOptimize(residue_fourier(g, 3.0));
}
BENCHMARK(BM_Residue);

}  // namespace

BENCHMARK_MAIN();
