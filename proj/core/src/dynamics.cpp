#include "gamow/dynamics.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>

#include "gamow/error.hpp"
#include "gamow/parallel.hpp"

namespace gamow {

namespace {

// i psi(omega) / (omega - z_R), the integrand of the Gamow amplitude up to 1/2pi.
RationalFunction gamow_integrand(const ResonanceLine& line, const TestFunction& psi) {
  const RationalFunction base = psi ? psi->function() : RationalFunction::constant(1.0);
  return base.divided_by_linear(line.z_r()).scaled(kI);
}

void require_lower_hardy(const TestFunction& psi) {
  if (psi && psi->half_plane() != HalfPlane::Lower)
    throw PreconditionError("Gamow amplitudes need a test function analytic in the lower half-plane");
}

void require_grid(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw PreconditionError("time grid contains a non-finite value");
    if (i > 0 && !(times[i] > times[i - 1])) throw PreconditionError("time grid must be strictly increasing");
  }
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

std::string describe(const TestFunction& psi) {
  if (!psi) return "unit";
  return "rational(" + std::to_string(psi->function().denominator_degree()) + ")";
}

AmplitudeValue gamow_amplitude(const ResonanceLine& line, const TestFunction& psi, double t,
                               SpectralSupport support, double tol) {
  require_lower_hardy(psi);
  if (!std::isfinite(t)) throw PreconditionError("time must be finite");
  const RationalFunction g = gamow_integrand(line, psi);
  if (support == SpectralSupport::FullLine) {
    if (t < 0.0) return AmplitudeValue{Complex{0.0, 0.0}, 0.0, QuadratureMethod::ResidueExact};
    const auto r = residue_fourier(g, t);
    return AmplitudeValue{r.value, 0.0, r.method};
  }
  const double weight = 1.0 / (2.0 * kPi);
  const auto q = fourier_halfline(g, t, tol / weight);
  return AmplitudeValue{weight * q.value, weight * q.abs_error_estimate, q.method};
}

AmplitudeValue gamow_amplitude_quadrature(const ResonanceLine& line, const TestFunction& psi, double t,
                                          double tol) {
  require_lower_hardy(psi);
  const auto q = fourier_fullline(gamow_integrand(line, psi), t, tol);
  return AmplitudeValue{q.value, q.abs_error_estimate, q.method};
}

AmplitudeSeries gamow_amplitude_series(const ResonanceLine& line, const TestFunction& psi,
                                       std::span<const double> times, SpectralSupport support, double tol) {
  require_grid(times);
  AmplitudeSeries series{{}, {}, {}, ModelDescriptor{line, support, describe(psi)}};
  series.times.assign(times.begin(), times.end());
  series.values.resize(times.size());
  series.errors.resize(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const auto a = gamow_amplitude(line, psi, times[i], support, tol);
    series.values[i] = a.value;
    series.errors[i] = a.abs_error;
  });
  return series;
}

AmplitudeValue survival_amplitude(const ResonanceLine& line, SpectralSupport support, double t, double tol) {
  if (!std::isfinite(t)) throw PreconditionError("time must be finite");
  const RationalFunction rho = bw_density_rational(line);
  if (support == SpectralSupport::FullLine) {
    // residue_fourier carries the 1/2pi of the inverse transform.
    const auto r = residue_fourier(rho, t);
    return AmplitudeValue{2.0 * kPi * r.value, 0.0, r.method};
  }
  const double norm = norm_truncated_closed_form(line);
  const auto q = fourier_halfline(rho, t, tol * norm);
  return AmplitudeValue{q.value / norm, q.abs_error_estimate / norm, q.method};
}

double survival_probability(const ResonanceLine& line, SpectralSupport support, double t, double tol) {
  return std::norm(survival_amplitude(line, support, t, tol).value);
}

PrecursorReport precursor_report(const ResonanceLine& line, const TestFunction& psi, SpectralSupport support,
                                 std::span<const double> times, double tol) {
  if (times.empty()) throw PreconditionError("precursor grid is empty");
  for (double t : times) {
    if (!(t < 0.0)) throw PreconditionError("precursor grid times must all be negative");
  }
  PrecursorReport report{gamow_amplitude_series(line, psi, times, support, tol), {}, 0.0, times.front()};
  report.probabilities.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double p = std::norm(report.amplitudes.values[i]);
    report.probabilities.push_back(p);
    if (p > report.max_probability) {
      report.max_probability = p;
      report.time_of_max = times[i];
    }
  }
  return report;
}

double tail_exponent(const ResonanceLine& line, double t_min, double t_max, int n_points, SpectralSupport support) {
  if (support == SpectralSupport::FullLine)
    throw PreconditionError("the full-line survival probability is exactly exponential; it has no power-law tail");
  if (!(t_min >= 20.0 * line.lifetime())) throw PreconditionError("tail window must start at t_min >= 20 tau");
  if (!(t_max > t_min)) throw PreconditionError("tail window needs t_max > t_min");
  if (n_points < 6) throw PreconditionError("tail fit needs at least 6 points");

  std::vector<double> log_t(n_points);
  std::vector<double> log_p(n_points);
  const double step = std::log(t_max / t_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) log_t[i] = std::log(t_min) + i * step;
  parallel_for(static_cast<std::size_t>(n_points), [&](std::size_t i) {
    const double p = survival_probability(line, support, std::exp(log_t[i]), 1e-12);
    if (!(p > 0.0)) throw ConvergenceError("survival probability vanished inside the tail window");
    log_p[i] = std::log(p);
  });

  const std::size_t third = static_cast<std::size_t>(n_points) / 3;
  const std::span<const double> xt(log_t);
  const std::span<const double> yp(log_p);
  const double early = least_squares_slope(xt.first(third), yp.first(third));
  const double late = least_squares_slope(xt.last(third), yp.last(third));
  if (std::abs(early - late) > 0.25) {
    throw WindowTooEarlyError("log-log slope drifts from " + std::to_string(early) + " to " + std::to_string(late) +
                              " across the window; the exponential branch still matters");
  }
  return least_squares_slope(xt, yp);
}

double crossover_time(const ResonanceLine& line, SpectralSupport support) {
  if (support == SpectralSupport::FullLine)
    throw PreconditionError("the full-line model has no power-law branch to cross");
  const double rho0 = bw_density(line, 0.0, SpectralSupport::HalfLine) / norm_truncated_closed_form(line);
  const double log_c = 2.0 * std::log(rho0);
  const double gamma = line.gamma();
  // log of (exponential branch / power-law branch).
  auto gap = [&](double t) { return -gamma * t - log_c + 2.0 * std::log(t); };

  const double tau = line.lifetime();
  double lo = tau;
  if (!(gap(lo) > 0.0)) throw NoCrossoverError("the power-law branch already dominates at t = tau");
  double hi = 2.0 * lo;
  while (gap(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6 * tau) throw NoCrossoverError("no crossover between tau and 1e6 tau");
  }
  std::uintmax_t iterations = 200;
  const auto bracket = boost::math::tools::toms748_solve(gap, lo, hi, boost::math::tools::eps_tolerance<double>(48),
                                                         iterations);
  return 0.5 * (bracket.first + bracket.second);
}

RationalFunction PoleBackgroundSplit::reassemble() const {
  std::vector<PoleTerm> terms;
  for (const auto& p : pole_terms) terms.push_back(PoleTerm{p.pole, {p.coefficient}});
  return RationalFunction(std::move(terms)) + background;
}

PoleBackgroundSplit pole_background_split(const RationalFunction& phi) {
  if (!phi.polynomial().empty()) throw PreconditionError("pole/background split needs a strictly proper function");
  PoleBackgroundSplit split;
  std::vector<PoleTerm> rest;
  for (const auto& term : phi.terms()) {
    const double im = term.pole.imag();
    if (im == 0.0) throw RealPoleError("function has a pole on the real axis");
    if (im > 0.0) {
      rest.push_back(term);
      continue;
    }
    if (term.order() > 1) throw DegeneratePoleError("resonance pole of order > 1 is not a single Gamow component");
    split.pole_terms.push_back(PoleComponent{term.pole, term.coefficients.front()});
  }
  split.background = RationalFunction(std::move(rest));
  return split;
}

double fermi_retarded_probability(const ResonanceLine& line, const TestFunction& psi, SpectralSupport support,
                                  double r, double c, double t, double tol) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw PreconditionError("distance r must be non-negative");
  if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("signal speed c must be positive");
  return std::norm(gamow_amplitude(line, psi, t - r / c, support, tol).value);
}

}  // namespace gamow
