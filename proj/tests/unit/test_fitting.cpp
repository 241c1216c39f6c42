#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "gamow/error.hpp"
#include "gamow/fitting.hpp"
#include "gamow/units.hpp"

using namespace gamow;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

std::vector<double> bins(double hi, int n) { return grid(0.0, hi, n + 1); }

}  // namespace

TEST_CASE("noise-free lineshape matches the Lorentzian and fits back exactly") {
  const ResonanceLine line(3.0, 0.02);
  const auto energies = grid(2.8, 3.2, 201);
  const auto sample = generate_lineshape(line, energies, 1e-4, 0.0, 1);
  for (std::size_t i = 0; i < energies.size(); i += 20) {
    const double d = energies[i] - 3.0;
    CHECK(sample.cross_sections[i] == doctest::Approx(1e-4 / (d * d + 1e-4)).epsilon(1e-14));
  }
  const auto fit = fit_lineshape(sample);
  CHECK(fit.gamma == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(fit.e_r == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.scale == doctest::Approx(1e-4).epsilon(1e-9));
  CHECK(fit.iterations > 0);
}

TEST_CASE("noisy lineshape is reproducible and fits within its error bars") {
  const ResonanceLine line(1.0, 0.01);
  const auto energies = grid(0.95, 1.05, 201);
  const auto a = generate_lineshape(line, energies, 2.5e-5, 0.01, 42);
  const auto b = generate_lineshape(line, energies, 2.5e-5, 0.01, 42);
  const auto c = generate_lineshape(line, energies, 2.5e-5, 0.01, 43);
  CHECK(a.cross_sections == b.cross_sections);
  CHECK(a.cross_sections != c.cross_sections);
  for (double s : a.cross_sections) CHECK(s >= 0.0);
  const auto fit = fit_lineshape(a);
  CHECK(std::abs(fit.gamma - 0.01) < 5.0 * fit.gamma_error);
  CHECK(fit.gamma_error > 0.0);
}

TEST_CASE("lineshape fit refuses a peak on the window edge") {
  const ResonanceLine line(1.0, 0.01);
  const auto sample = generate_lineshape(line, grid(1.0, 1.2, 50), 1.0, 0.0, 1);
  CHECK_THROWS_AS(fit_lineshape(sample), NoPeakError);
  LineshapeSample tiny;
  tiny.energies = {1.0, 2.0};
  tiny.cross_sections = {1.0, 2.0};
  CHECK_THROWS_AS(fit_lineshape(tiny), PreconditionError);
}

TEST_CASE("decay counts follow the exponential bin integrals") {
  const ResonanceLine line(1.0, 0.5);
  const auto edges = bins(10.0, 20);
  const auto counts = generate_decay_counts(line, edges, 1'000'000, 9, false);
  REQUIRE(counts.counts.size() == 20);
  for (std::size_t i = 0; i < counts.counts.size(); ++i) {
    const double expected = 1e6 * (std::exp(-0.5 * edges[i]) - std::exp(-0.5 * edges[i + 1]));
    CHECK(static_cast<double>(counts.counts[i]) == std::round(expected));
  }
  const auto p1 = generate_decay_counts(line, edges, 1'000'000, 9, true);
  const auto p2 = generate_decay_counts(line, edges, 1'000'000, 9, true);
  CHECK(p1.counts == p2.counts);
  CHECK(p1.counts != counts.counts);
}

TEST_CASE("decay-rate fit recovers the rate") {
  const ResonanceLine line(1.0, 0.5);
  const auto edges = bins(10.0, 20);
  const auto exact = fit_decay_rate(generate_decay_counts(line, edges, 1'000'000'000'000ULL, 1, false));
  CHECK(exact.gamma_r == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(exact.method == DecayFitMethod::MaximumLikelihood);

  const auto noisy = fit_decay_rate(generate_decay_counts(line, edges, 1'000'000, 5, true));
  CHECK(std::abs(noisy.gamma_r - 0.5) < 5.0 * noisy.gamma_r_error);
  // Fisher information of the profiled likelihood for ~1e6 events over 5 lifetimes.
  CHECK(noisy.gamma_r_error / 0.5 == doctest::Approx(1e-3).epsilon(0.5));

  DecayCounts sparse;
  sparse.bin_edges = {0.0, 1.0, 2.0, 3.0};
  sparse.counts = {10, 0, 0};
  CHECK_THROWS_AS(fit_decay_rate(sparse), PreconditionError);
}

TEST_CASE("width against lifetime") {
  const auto report = compare_width_lifetime(4.05e-8, 4.0e-8, 4e-10, 3e-10);
  CHECK(report.tau_from_width == doctest::Approx(units::kHbarEvS / 4.05e-8));
  CHECK(report.tau_fit == doctest::Approx(units::kHbarEvS / 4.0e-8));
  CHECK(report.ratio == doctest::Approx(1.0125));
  CHECK(report.ratio_error == doctest::Approx(1.0125 * std::hypot(4e-10 / 4.05e-8, 3e-10 / 4.0e-8)));
  CHECK(units::lifetime_from_width(units::width_from_lifetime(16.2e-9)) == doctest::Approx(16.2e-9));
  CHECK_THROWS_AS(compare_width_lifetime(0.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(compare_width_lifetime(1.0, 1.0, -1.0), PreconditionError);
}

TEST_CASE("derived seeds are stable and distinct") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("round trip over replicas") {
  const ResonanceLine line(1.0, 0.01);
  RoundTripConfig config;
  config.energies = grid(0.9, 1.1, 201);
  config.amplitude_scale = 2.5e-5;
  config.noise_sigma = 0.01;
  config.bin_edges = bins(5.0 * line.lifetime(), 20);
  config.replicas = 12;
  config.seed = 77;
  const auto summary = run_round_trip(line, config);
  REQUIRE(summary.gamma.size() == 12);
  CHECK(summary.mean_gamma == doctest::Approx(0.01).epsilon(0.01));
  CHECK(summary.mean_gamma_r == doctest::Approx(0.01).epsilon(0.01));
  CHECK(summary.mean_ratio == doctest::Approx(1.0).epsilon(0.02));
  const double mean = std::accumulate(summary.gamma.begin(), summary.gamma.end(), 0.0) / 12.0;
  CHECK(summary.mean_gamma == doctest::Approx(mean).epsilon(1e-14));

  // Same seed, same replicas, regardless of thread scheduling.
  const auto again = run_round_trip(line, config);
  CHECK(again.gamma == summary.gamma);
  CHECK(again.gamma_r == summary.gamma_r);

  config.decay_gamma = 0.02;
  CHECK(run_round_trip(line, config).mean_ratio == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("delimited-text exchange round-trips") {
  const ResonanceLine line(1.0, 0.1);
  const auto sample = generate_lineshape(line, grid(0.5, 1.5, 11), 1.0, 0.0, 3);
  std::stringstream lineshape;
  write_lineshape_csv(lineshape, sample);
  const auto back = read_lineshape_csv(lineshape);
  CHECK(back.energies == sample.energies);
  CHECK(back.cross_sections == sample.cross_sections);

  const auto counts = generate_decay_counts(line, bins(50.0, 10), 1000, 3, true);
  std::stringstream decay;
  write_decay_csv(decay, counts);
  const auto counts_back = read_decay_csv(decay);
  CHECK(counts_back.bin_edges == counts.bin_edges);
  CHECK(counts_back.counts == counts.counts);

  std::istringstream commented("# measured\nE,sigma\n0.9,1.0\n1.0,2.0\n");
  const auto parsed = read_lineshape_csv(commented);
  CHECK(parsed.energies.size() == 2);

  std::istringstream gap("0,1,5\n2,3,5\n");
  CHECK_THROWS_AS(read_decay_csv(gap), PreconditionError);
  std::istringstream bad("E,sigma\n0.9,abc\n");
  CHECK_THROWS_AS(read_lineshape_csv(bad), PreconditionError);
}
