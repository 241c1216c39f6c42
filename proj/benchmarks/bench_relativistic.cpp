#include <benchmark/benchmark.h>

#include "gamow/relativistic.hpp"

namespace {

using namespace gamow;

void BM_WignerD(benchmark::State& state) {
  const Spin j(static_cast<int>(state.range(0)));
  const auto r = LorentzTransform::rotation({1.0, 2.0, 3.0}, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_d(j, r));
}
BENCHMARK(BM_WignerD)->Arg(1)->Arg(3)->Arg(10);

void BM_TransformGamow(benchmark::State& state) {
  const GamowLabel label(Spin(1), 1.0, 0.1, Eigen::Vector3d(0.2, -0.3, 0.1), 1);
  const auto lambda = LorentzTransform::boost({0.5, 0.1, 0.0}) * LorentzTransform::rotation({0.0, 0.0, 1.0}, 0.4);
  const FourVector x{2.0, {0.5, 0.2, 0.1}};
  for (auto _ : state) benchmark::DoNotOptimize(transform_gamow(label, lambda, x));
}
BENCHMARK(BM_TransformGamow);

}  // namespace

BENCHMARK_MAIN();
