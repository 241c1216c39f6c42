#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "gamow/error.hpp"
#include "gamow/quadrature.hpp"
#include "gamow/spectral.hpp"

using namespace gamow;

namespace {

oracle::SimplePoles simple_poles_of(const RationalFunction& g) {
  oracle::SimplePoles out;
  for (const auto& term : g.terms()) {
    REQUIRE(term.order() == 1);
    out.poles.push_back(term.pole);
    out.coefficients.push_back(term.coefficients[0]);
  }
  return out;
}

}  // namespace

TEST_CASE("full-line Breit-Wigner amplitude follows theta(t) e^{-i z_R t}") {
  const ResonanceLine line(1.0, 0.1);
  const auto g = bw_amplitude_rational(line, AmplitudeScale::Bare);
  const ComplexIntegrand f = [&](double w) { return g(w); };
  const auto features = features_of(g);
  const double tau = line.lifetime();

  // The 1/2pi of the transform and the 2pi of the residue cancel for the bare kernel.
  const auto at_tau = fourier_fullline(f, tau, 1e-10, features);
  CHECK(std::abs(at_tau.value - oracle::gamow_closed_form(1.0, 0.1, tau)) < 1e-9);
  CHECK(at_tau.abs_error_estimate > 0.0);

  const auto before = fourier_fullline(f, -tau, 1e-10, features);
  CHECK(std::abs(before.value) < 1e-9);

  const auto at_zero = fourier_fullline(f, 0.0, 1e-10, features);
  CHECK(std::abs(at_zero.value - residue_fourier(g, 0.0).value) < 1e-9);
  CHECK(std::abs(at_zero.value - Complex(1.0, 0.0)) < 1e-9);
}

TEST_CASE("half-line transforms") {
  const auto expo = fourier_halfline([](double w) { return Complex(std::exp(-w), 0.0); }, 0.0, 1e-12);
  CHECK(std::abs(expo.value - Complex(1.0, 0.0)) < 1e-11);

  // 1 / (1 + i t) for e^{-w}.
  const auto expo_t = fourier_halfline([](double w) { return Complex(std::exp(-w), 0.0); }, 3.0, 1e-12);
  CHECK(std::abs(expo_t.value - 1.0 / Complex(1.0, 3.0)) < 1e-10);

  const ResonanceLine line(1.0, 0.1);
  const auto rho = bw_density_rational(line);
  CHECK(std::abs(fourier_halfline(rho, 0.0, 1e-12).value - oracle::truncated_norm(1.0, 0.1)) < 1e-11);
  const ComplexIntegrand rho_f = [&](double w) { return rho(w); };
  CHECK(std::abs(fourier_halfline(rho_f, 0.0, 1e-12, features_of(rho)).value - oracle::truncated_norm(1.0, 0.1)) <
        1e-11);
}

TEST_CASE("half-line density transform decays like rho(0)/t") {
  const ResonanceLine line(1.0, 0.1);
  const auto rho = bw_density_rational(line);
  const double rho0 = bw_density(line, 0.0, SpectralSupport::FullLine);
  const auto poles = simple_poles_of(rho);
  for (double t : {2000.0, 5000.0}) {
    const auto r = fourier_halfline(rho, t, 1e-14);
    // First two orders of the endpoint expansion: rho(0)/(it) + rho'(0)/(it)^2.
    const double rho1 = (bw_density(line, 1e-6, SpectralSupport::FullLine) -
                         bw_density(line, -1e-6, SpectralSupport::FullLine)) / 2e-6;
    const Complex it(0.0, t);
    const Complex asymptotic = rho0 / it + rho1 / (it * it);
    CHECK(std::abs(r.value - asymptotic) < 10.0 * rho0 / (t * t * t) + 1e-15);
    CHECK(std::abs(r.value - oracle::halfline_direct(poles, t)) < 1e-14);
  }
}

TEST_CASE("rotated contour, panels and the long double oracle agree on the half-line") {
  const ResonanceLine line(1.0, 0.1);
  const auto psi = RationalHardyFunction::detector(3.0);
  // psi(omega) / (omega - z_R), decomposed into simple poles through the library algebra.
  const auto g = psi.function().divided_by_linear(line.z_r()).scaled(kI / (2.0 * kPi));
  std::vector<double> times{-20.0, -10.0, -1.0, 1.0, 10.0};
  for (double t : times) {
    const auto rotated = fourier_halfline(g, t, 1e-12, HalfLineStrategy::Auto);
    const auto panels = fourier_halfline(g, t, 1e-12, HalfLineStrategy::Panels);
    CHECK(rotated.method == QuadratureMethod::RotatedContour);
    CHECK(panels.method != QuadratureMethod::RotatedContour);
    CHECK(std::abs(rotated.value - panels.value) < 1e-11);
  }

  const auto simple = bw_amplitude_rational(line);
  const auto poles = simple_poles_of(simple);
  for (double t : {-10.0, -1.0, 2.0, 10.0}) {
    const auto r = fourier_halfline(simple, t, 1e-13);
    CHECK(std::abs(r.value - oracle::halfline_direct(poles, t)) < 1e-12);
    CHECK(std::abs(r.value - oracle::halfline_direct(poles, t)) <= r.abs_error_estimate + 1e-15);
  }
}

TEST_CASE("residue route") {
  const ResonanceLine line(2.0, 0.3);
  const auto g = bw_amplitude_rational(line, AmplitudeScale::Bare);
  for (double t : {0.0, 0.5, 3.0, 40.0}) {
    const auto r = residue_fourier(g, t);
    CHECK(r.method == QuadratureMethod::ResidueExact);
    CHECK(r.abs_error_estimate == 0.0);
    CHECK(std::abs(r.value - oracle::gamow_closed_form(2.0, 0.3, t)) < 1e-15);
  }
  CHECK(residue_fourier(g, -1.0).value == Complex(0.0, 0.0));

  const auto psi = RationalHardyFunction::detector(5.0);
  const auto with_psi = psi.function().divided_by_linear(line.z_r()).scaled(kI);
  for (double t : {0.0, 1.0, 7.0}) {
    const Complex expected = oracle::gamow_closed_form(2.0, 0.3, t, psi(line.z_r()));
    CHECK(std::abs(residue_fourier(with_psi, t).value - expected) < 1e-14);
  }
  // Only psi's upper poles remain for t < 0.
  CHECK(std::abs(residue_fourier(with_psi, -1.0).value) > 0.0);

  CHECK_THROWS_AS(residue_fourier(RationalFunction::simple_pole(1.0, 1.0), 1.0), RealPoleError);
  CHECK_THROWS_AS(residue_fourier(RationalFunction::constant(1.0), 1.0), NonDecayingIntegrand);
}

TEST_CASE("cross validation against residues") {
  const ResonanceLine line(1.0, 0.1);
  const auto g = bw_amplitude_rational(line, AmplitudeScale::Bare);
  const double tau = line.lifetime();

  const auto at_tau = cross_validate(g, tau);
  CHECK(at_tau.agree);
  CHECK(at_tau.difference < 1e-6 * std::abs(at_tau.residue));

  const auto before = cross_validate(g, -tau);
  CHECK(before.agree);
  CHECK(before.residue == Complex(0.0, 0.0));
  CHECK(std::abs(before.quadrature) < 1e-8);

  const auto late = cross_validate(g, 10.0 * tau);
  CHECK(late.agree);
  CHECK(late.difference < 1e-6 * std::abs(late.residue));
}

TEST_CASE("randomized rational integrands: estimates cover the true error") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int covered = 0;
  int total = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<PoleTerm> terms;
    for (int k = 0; k < 3; ++k) {
      Complex pole(2.0 * u(rng), (k % 2 == 0 ? -1.0 : 1.0) * (0.1 + std::abs(u(rng))));
      terms.push_back(PoleTerm{pole, {Complex(u(rng), u(rng))}});
    }
    const RationalFunction g(terms);
    const double t = 5.0 * u(rng);
    const auto report = cross_validate(g, t, 1e-9);
    CHECK(report.difference < std::max(1e-8, 1e-9 * std::abs(report.residue)));
    ++total;
    if (report.difference <= report.quadrature_error + 1e-15) ++covered;
  }
  CHECK(covered >= total - 1);
}

TEST_CASE("linearity and conjugation symmetry") {
  const auto g1 = RationalFunction::simple_pole({0.5, -0.2}, 1.0);
  const auto g2 = RationalFunction::simple_pole({-1.0, 0.4}, {0.0, 2.0});
  const Complex a(0.3, -1.1);
  const Complex b(2.0, 0.5);
  const auto sum = g1.scaled(a) + g2.scaled(b);
  const double t = 1.7;
  const auto lhs = fourier_fullline(sum, t, 1e-11).value;
  const auto rhs = a * fourier_fullline(g1, t, 1e-11).value + b * fourier_fullline(g2, t, 1e-11).value;
  CHECK(std::abs(lhs - rhs) < 1e-9);

  // A real integrand: the density.
  const auto rho = bw_density_rational(ResonanceLine(1.0, 0.5));
  for (double s : {0.5, 2.0}) {
    const auto plus = fourier_fullline(rho, s, 1e-11).value;
    const auto minus = fourier_fullline(rho, -s, 1e-11).value;
    CHECK(std::abs(plus - std::conj(minus)) < 1e-10);
  }
}

TEST_CASE("evaluate dispatches on support and sign") {
  const auto g = RationalFunction::simple_pole({1.0, -0.5}, kI);
  FourierIntegral integral;
  integral.integrand = [&](double w) { return g(w); };
  integral.t = 2.0;
  integral.features = features_of(g);
  const auto full = evaluate(integral, 1e-10);
  CHECK(std::abs(full.value - residue_fourier(g, 2.0).value) < 1e-9);

  // e^{+i omega t} at t equals e^{-i omega t} at -t.
  integral.sign = PhaseSign::Positive;
  integral.t = -2.0;
  CHECK(std::abs(evaluate(integral, 1e-10).value - full.value) < 1e-9);

  integral.sign = PhaseSign::Negative;
  integral.t = 2.0;
  integral.support = SpectralSupport::HalfLine;
  CHECK(std::abs(evaluate(integral, 1e-10).value - fourier_halfline(g, 2.0, 1e-10).value) < 1e-9);
}

TEST_CASE("non-decaying integrands are refused") {
  CHECK_THROWS_AS(fourier_fullline(RationalFunction::constant(1.0), 1.0), NonDecayingIntegrand);
  CHECK_THROWS_AS(fourier_halfline(RationalFunction::constant(1.0), 1.0), NonDecayingIntegrand);
}
