// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "gamow/cli/app.hpp"
#include "gamow/dynamics.hpp"
#include "gamow/fitting.hpp"
#include "gamow/quadrature.hpp"
#include "gamow/relativistic.hpp"
#include "gamow/spectral.hpp"
#include "gamow/units.hpp"

using namespace gamow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool condition, const char* what) {
  if (!condition && o.pass) {
    o.pass = false;
    o.detail = std::string("failed: ") + what + "; " + o.detail;
  }
}

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, fmt, a, b, c, d);
  return buffer;
}

Outcome criterion_1() {
  Outcome o;
  double worst_rel = 0.0;
  double worst_before = 0.0;
  double worst_residue = 0.0;
  double slowest = 0.0;
  for (double ratio : {1e-3, 1e-1}) {
    const ResonanceLine line(1.0, ratio);
    const auto g = bw_amplitude_rational(line, AmplitudeScale::Bare);
    const ComplexIntegrand f = [&](double w) { return g(w); };
    const auto features = features_of(g);
    const double tau = line.lifetime();
    for (double t : {0.0, 0.5 * tau, tau, 5.0 * tau}) {
      const Complex exact = oracle::gamow_closed_form(1.0, ratio, t);
      const auto start = Clock::now();
      const auto q = fourier_fullline(f, t, 1e-10, features);
      slowest = std::max(slowest, seconds_since(start));
      worst_rel = std::max(worst_rel, std::abs(q.value - exact) / std::abs(exact));
      worst_residue = std::max(worst_residue, std::abs(residue_fourier(g, t).value - exact) / std::abs(exact));
    }
    const auto start = Clock::now();
    const auto before = fourier_fullline(f, -tau, 1e-10, features);
    slowest = std::max(slowest, seconds_since(start));
    worst_before = std::max(worst_before, std::abs(before.value));
    worst_residue = std::max(worst_residue, std::abs(residue_fourier(g, -tau).value));
  }
  require(o, worst_rel < 1e-6, "relative error >= 1e-6");
  require(o, worst_before < 1e-8, "|value| at -tau >= 1e-8");
  require(o, worst_residue < 1e-12, "residue route off by >= 1e-12");
  require(o, slowest < 1.0, "a point took >= 1 s");
  o.detail += format("max rel err %.2e, max |A(-tau)| %.2e, residue err %.2e, slowest point %.3f s", worst_rel,
                     worst_before, worst_residue, slowest);
  return o;
}

Outcome criterion_2() {
  Outcome o;
  double worst_half = 0.0;
  double worst_series_margin = 0.0;
  double worst_full = 0.0;
  for (double ratio : {0.1, 0.05, 0.01, 0.001}) {
    const ResonanceLine line(1.0, ratio);
    const auto rho = bw_density_rational(line);
    const ComplexIntegrand f = [&](double w) { return rho(w); };
    const double closed = oracle::truncated_norm(1.0, ratio);
    const auto half = fourier_halfline(f, 0.0, 1e-12, features_of(rho));
    worst_half = std::max(worst_half, std::abs(half.value - closed));

    const double x = ratio / 2.0;
    const double series_error = std::abs(norm_truncated_series(line, 1) - closed);
    worst_series_margin = std::max(worst_series_margin, series_error / std::pow(x, 5));

    const auto full = fourier_fullline(f, 0.0, 1e-12 / (2.0 * kPi), features_of(rho));
    worst_full = std::max(worst_full, std::abs(2.0 * kPi * full.value - 1.0));
  }
  require(o, worst_half < 1e-10, "half-line integral off the arctan form");
  require(o, worst_series_margin < 1.0, "order-1 series error >= (Gamma/2E_R)^5");
  require(o, worst_full < 1e-10, "full-line norm off 1");
  o.detail += format("half-line err %.2e, series err / x^5 <= %.3f, full-line err %.2e", worst_half,
                     worst_series_margin, worst_full);
  return o;
}

const std::vector<cli::Cell>& row_named(const cli::Table& table, const std::string& name) {
  for (const auto& row : table.rows) {
    if (const auto* s = std::get_if<std::string>(&row.at(0)); s && *s == name) return row;
  }
  throw std::runtime_error("missing row " + name);
}

Outcome criterion_3() {
  Outcome o;
  std::istringstream sodium_text("line.preset = sodium-3p\nfit.n_initial = 1000000000000\n");
  const auto sodium = cli::cmd_fit(cli::Config::parse(sodium_text), false);
  const double tau_ns = std::get<double>(row_named(sodium, "tau_from_width").at(1));
  std::istringstream fe_text("line.preset = fe57\n");
  const auto fe = cli::cmd_fit(cli::Config::parse(fe_text), false);
  const double ratio = std::get<double>(row_named(fe, "ratio").at(1));
  const std::string verdict = std::get<std::string>(row_named(fe, "agreement").at(1));
  require(o, std::abs(tau_ns - 16.237) <= 0.001, "sodium tau outside 16.237 +- 0.001 ns");
  require(o, verdict == "PASS" && std::abs(ratio - 1.0) <= 0.1, "fe57 width and lifetime disagree by > 10%");
  o.detail += format("sodium tau = %.4f ns, fe57 Gamma/Gamma_R = %.4f", tau_ns, ratio);
  return o;
}

RationalHardyFunction random_hardy(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  std::uniform_real_distribution<double> im(0.5, 2.0);
  std::uniform_int_distribution<int> count(2, 3);
  const int n = count(rng);
  std::vector<PoleSpec> poles;
  for (int i = 0; i < n; ++i) poles.push_back({{re(rng), im(rng)}, 1});
  const std::vector<Complex> numerator{Complex(re(rng), re(rng))};
  return RationalHardyFunction(RationalFunction::from_factored(numerator, poles), HalfPlane::Lower);
}

Outcome criterion_4() {
  Outcome o;
  std::mt19937_64 rng(2024);
  bool residue_exact = true;
  double worst_quadrature = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto psi = random_hardy(rng);
    for (double ratio : {1e-3, 1e-2}) {
      const ResonanceLine line(1.0, ratio);
      for (double n : {1.0, 2.0, 5.0}) {
        const double t = -n * line.lifetime();
        residue_exact = residue_exact && gamow_amplitude(line, psi, t, SpectralSupport::FullLine).value == Complex(0.0, 0.0);
        worst_quadrature = std::max(worst_quadrature, std::abs(gamow_amplitude_quadrature(line, psi, t, 1e-10).value));
      }
    }
  }
  require(o, residue_exact, "residue route not exactly zero");
  require(o, worst_quadrature < 1e-8, "quadrature magnitude >= 1e-8");
  o.detail += format("10 test functions x 2 lines x 3 times: residue exactly 0, max |quadrature| %.2e",
                     worst_quadrature);
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const ResonanceLine line(1.0, 0.1);
  const double t = -line.lifetime();
  const auto coarse = gamow_amplitude(line, TestFunction{}, t, SpectralSupport::HalfLine, 1e-8);
  const auto fine = gamow_amplitude(line, TestFunction{}, t, SpectralSupport::HalfLine, 1e-10);
  const double p_coarse = std::norm(coarse.value);
  const double p_fine = std::norm(fine.value);

  oracle::SimplePoles kernel;
  kernel.poles = {line.z_r()};
  kernel.coefficients = {kI / (2.0 * kPi)};
  const double p_oracle = std::norm(oracle::halfline_direct(kernel, t));

  char a[32];
  char b[32];
  std::snprintf(a, sizeof a, "%.2e", p_coarse);
  std::snprintf(b, sizeof b, "%.2e", p_fine);
  require(o, p_fine > 0.0, "precursor not positive");
  require(o, std::string(a) == b, "3 significant figures change under refinement");
  require(o, std::abs(p_fine - p_oracle) <= 1e-3 * p_oracle, "disagrees with direct quadrature");
  o.detail += format("|A(-tau)|^2 = %.6e (tol 1e-8), %.6e (tol 1e-10), direct %.6e", p_coarse, p_fine, p_oracle);
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const ResonanceLine line(1.0, 0.1);
  const double tau = line.lifetime();
  const auto start = Clock::now();
  const double slope = tail_exponent(line, 50.0 * tau, 500.0 * tau, 40);
  const double elapsed = seconds_since(start);
  require(o, slope >= -2.3 && slope <= -1.7, "slope outside [-2.3, -1.7]");
  require(o, elapsed < 30.0, "took >= 30 s");
  o.detail += format("slope %.4f over [50, 500] tau in %.2f s", slope, elapsed);
  return o;
}

Outcome criterion_7() {
  Outcome o;
  const auto start = Clock::now();
  const ResonanceLine line(2.1044, 4.0538e-8);
  std::vector<double> energies(201);
  for (std::size_t i = 0; i < energies.size(); ++i) energies[i] = line.e_r() + line.gamma() * (-10.0 + 0.1 * i);
  std::vector<double> edges(21);
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = 0.25 * i * line.lifetime();
  const double scale = 0.25 * line.gamma() * line.gamma();

  const auto shape = fit_lineshape(generate_lineshape(line, energies, scale, 0.0, 1));
  const auto rate = fit_decay_rate(generate_decay_counts(line, edges, 1'000'000'000'000ULL, 2, false));
  const double err_gamma = std::abs(shape.gamma / line.gamma() - 1.0);
  const double err_rate = std::abs(rate.gamma_r / line.gamma() - 1.0);

  RoundTripConfig config;
  config.energies = energies;
  config.amplitude_scale = scale;
  config.noise_sigma = 0.01;
  config.bin_edges = edges;
  config.n_initial = 1'000'000;
  config.poisson = true;
  config.replicas = 100;
  config.seed = 20240601;
  const auto summary = run_round_trip(line, config);
  const double noisy_gamma = std::abs(summary.mean_gamma / line.gamma() - 1.0);
  const double noisy_rate = std::abs(summary.mean_gamma_r / line.gamma() - 1.0);
  const double noisy_ratio = std::abs(summary.mean_ratio - 1.0);
  const double elapsed = seconds_since(start);

  require(o, err_gamma < 1e-6 && err_rate < 1e-6, "noise-free recovery >= 1e-6");
  require(o, noisy_gamma < 0.01 && noisy_rate < 0.01, "noisy mean off by >= 1%");
  require(o, noisy_ratio < 0.02, "noisy ratio off by >= 2%");
  require(o, elapsed < 60.0, "took >= 60 s");
  o.detail += format("noise-free %.1e / %.1e; 100 noisy replicas %.2e / %.2e", err_gamma, err_rate, noisy_gamma,
                     noisy_rate) +
              format(", ratio %.2e, %.2f s", noisy_ratio, elapsed);
  return o;
}

Outcome criterion_8() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GamowLabel label(Spin(1), 1.0, 0.1, Eigen::Vector3d(0.2, -0.3, 0.1), 1);
  const auto id = LorentzTransform::identity();
  auto phase = [&](const FourVector& x) { return std::get<TransformedState>(transform_gamow(label, id, x)).phase; };
  auto forward = [&] {
    const Eigen::Vector3d d = oracle::random_axis(rng) * u(rng);
    const double t = 0.1 + 5.0 * u(rng);
    return FourVector{t, {t * d[0], t * d[1], t * d[2]}};
  };

  bool closed = true;
  double worst_phase = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const FourVector x1 = forward();
    const FourVector x2 = forward();
    closed = closed && in_forward_cone(x1 + x2);
    const Complex lhs = phase(x1 + x2);
    worst_phase = std::max(worst_phase, std::abs(lhs - phase(x1) * phase(x2)) / std::abs(lhs));
  }

  bool rejected = true;
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector3d d = oracle::random_axis(rng);
    const double t = 5.0 * u(rng);
    const FourVector past{-0.01 - t, {d[0] * t, d[1] * t, d[2] * t}};
    const double r = t * (1.01 + u(rng));
    const FourVector spacelike{t, {d[0] * r, d[1] * r, d[2] * r}};
    const FourVector backward_light{-t - 0.01, {0.0, 0.0, 0.0}};
    for (const auto& x : {past, spacelike, backward_light}) {
      const auto lambda = LorentzTransform::boost(oracle::random_axis(rng) * 0.9 * u(rng));
      rejected = rejected && std::holds_alternative<CausalityRejection>(transform_gamow(label, lambda, x));
    }
  }

  double worst_unitarity = 0.0;
  double worst_representation = 0.0;
  for (int twice_j = 0; twice_j <= 3; ++twice_j) {
    const Spin j(twice_j);
    const auto identity = Eigen::MatrixXcd::Identity(j.dimension(), j.dimension());
    for (int i = 0; i < 200; ++i) {
      const auto r1 = LorentzTransform::rotation(oracle::random_axis(rng), 2.0 * kPi * u(rng));
      const auto r2 = LorentzTransform::rotation(oracle::random_axis(rng), 2.0 * kPi * u(rng));
      const Eigen::MatrixXcd d1 = wigner_d(j, r1);
      const Eigen::MatrixXcd d2 = wigner_d(j, r2);
      const Eigen::MatrixXcd d12 = wigner_d(j, r1 * r2);
      worst_unitarity = std::max(worst_unitarity, (d1 * d1.adjoint() - identity).cwiseAbs().maxCoeff());
      const Eigen::MatrixXcd product = d1 * d2;
      double gap = (product - d12).cwiseAbs().maxCoeff();
      // A half-integer D^j is fixed by the SO(3) element only up to sign.
      if (twice_j % 2 == 1) gap = std::min(gap, (product + d12).cwiseAbs().maxCoeff());
      worst_representation = std::max(worst_representation, gap);
    }
  }

  const GamowLabel rest(Spin(0), 1.3, 0.2, Eigen::Vector3d(0.0, 0.0, 0.0), 0);
  double worst_rest = 0.0;
  for (double t : {0.0, 0.5, 1.0, 5.0, 20.0}) {
    const Complex p = std::get<TransformedState>(transform_gamow(rest, id, FourVector{t, {0.0, 0.0, 0.0}})).phase;
    worst_rest = std::max(worst_rest, std::abs(p - oracle::gamow_closed_form(1.3, 0.2, t)));
  }

  require(o, closed, "sum of forward translations left the cone");
  require(o, worst_phase < 1e-12, "phase not multiplicative to 1e-12");
  require(o, rejected, "a backward or spacelike translation was accepted");
  require(o, worst_unitarity < 1e-10, "D^j not unitary to 1e-10");
  require(o, worst_representation < 1e-10, "D^j not a representation to 1e-10");
  require(o, worst_rest < 1e-12, "rest phase off the exponential law");
  o.detail += format("phase err %.1e, unitarity %.1e, representation %.1e, rest phase %.1e", worst_phase,
                     worst_unitarity, worst_representation, worst_rest);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"1 Lorentzian-exponential exactness", criterion_1},
      {"2 truncated norm", criterion_2},
      {"3 preset constants", criterion_3},
      {"4 causality gate", criterion_4},
      {"5 precursor", criterion_5},
      {"6 long-time tail", criterion_6},
      {"7 fit round trip", criterion_7},
      {"8 relativistic semigroup", criterion_8},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
