#include "gamow/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gamow/detail/integration.hpp"
#include "gamow/error.hpp"

namespace gamow {

namespace {

using detail::integrate_adaptive;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kPanelBudget = 1'000'000;
constexpr int kTailPanels = 4000;

void check_tolerance(double tol, double t) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw PreconditionError("tolerance must be positive and finite");
  if (!std::isfinite(t)) throw PreconditionError("time must be finite");
}

// Throws unless |g| falls by at least 10^power between R and 10 R.
void require_decay(const ComplexIntegrand& g, double radius, double power, bool both_sides, const char* what) {
  for (double side : {1.0, -1.0}) {
    if (side < 0.0 && !both_sides) break;
    const double near = std::abs(g(side * radius));
    const double far = std::abs(g(side * 10.0 * radius));
    if (!std::isfinite(near) || !std::isfinite(far) || far > near * std::pow(10.0, -power))
      throw NonDecayingIntegrand(what);
  }
}

struct Span {
  double lo;
  double hi;
};

Span core_span(std::span<const Feature> features, double default_lo, double default_hi) {
  if (features.empty()) return {default_lo, default_hi};
  Span s{kInf, -kInf};
  for (const auto& f : features) {
    s.lo = std::min(s.lo, f.center - 10.0 * f.width);
    s.hi = std::max(s.hi, f.center + 10.0 * f.width);
  }
  return s;
}

std::vector<double> layout(double lo, double hi, std::span<const Feature> features, double t) {
  std::vector<double> points{lo, hi};
  for (const auto& f : features) {
    for (double k : {0.0, -1.0, 1.0, -4.0, 4.0, -16.0, 16.0}) {
      const double x = f.center + k * f.width;
      if (x > lo && x < hi) points.push_back(x);
    }
  }
  if (t != 0.0) {
    const double h = kPi / std::abs(t);
    const double count = std::ceil((hi - lo) / h);
    if (count > kPanelBudget)
      throw ToleranceNotMet("oscillatory core needs more half-period panels than the budget allows",
                            Complex{0.0, 0.0}, kInf);
    for (int k = 1; k < static_cast<int>(count); ++k) points.push_back(lo + k * h);
  }
  std::sort(points.begin(), points.end());
  const double scale = std::max(std::abs(lo), std::abs(hi));
  std::vector<double> out;
  for (double x : points) {
    if (out.empty() || x - out.back() > 1e-14 * scale) out.push_back(x);
  }
  if (out.back() != hi) out.back() = hi;
  return out;
}

int interval_budget(std::size_t breaks) { return static_cast<int>(breaks) + 20000; }

// Rounding of the nodes shifts the phase omega * t by about eps |omega t|;
// no panel refinement can remove that, so it enters the estimate directly.
double phase_floor(double t, double reach, double abs_integral) {
  return std::numeric_limits<double>::epsilon() * std::abs(t) * reach * abs_integral;
}

struct TailOutcome {
  Complex value;
  double error = 0.0;
  double abs_integral = 0.0;
  int panels = 0;
  bool bounded = false;
  bool converged = true;
};

TailOutcome oscillating_tail(const ComplexIntegrand& g, const detail::RealToComplex& f, double edge, int direction,
                             double t, double tol) {
  TailOutcome out;
  const double bound = 2.0 * std::abs(g(edge)) / std::abs(t);
  if (bound < 0.1 * tol) {
    out.error = bound;
    out.bounded = true;
    return out;
  }
  const auto tail = detail::oscillatory_tail(f, edge, direction, kPi / std::abs(t), tol, kTailPanels);
  out.value = tail.value;
  out.error = tail.error;
  out.abs_integral = tail.abs_integral;
  out.panels = tail.panels;
  out.converged = tail.converged;
  return out;
}

QuadratureResult finish(Complex value, double error, int panels, QuadratureMethod method, double tol) {
  if (!(error <= tol)) {
    char message[128];
    std::snprintf(message, sizeof message, "quadrature error estimate %.3g exceeds tolerance %.3g", error, tol);
    throw ToleranceNotMet(message, value, error);
  }
  return QuadratureResult{value, error, panels, method};
}

// e^{-i beta t} with the real phase Re(beta) t carried to twice working
// precision, so long times do not lose the phase to rounding of the product.
Complex exp_minus_i(Complex beta, double t) {
  const double phase = beta.real() * t;
  const double residual = std::fma(beta.real(), t, -phase);
  return std::exp(beta.imag() * t) * std::polar(1.0, -phase) * std::polar(1.0, -residual);
}

Complex pole_residue(const PoleTerm& term, double t) {
  // Res of c / (omega - beta)^m e^{-i omega t} = c (-i t)^{m-1} / (m-1)! e^{-i beta t}.
  Complex sum{0.0, 0.0};
  Complex power{1.0, 0.0};
  double factorial = 1.0;
  for (int m = 1; m <= term.order(); ++m) {
    if (m > 1) {
      power *= Complex{0.0, -t};
      factorial *= m - 1;
    }
    sum += term.coefficients[m - 1] * power / factorial;
  }
  return sum * exp_minus_i(term.pole, t);
}

void require_proper(const RationalFunction& g) {
  if (!g.polynomial().empty()) throw NonDecayingIntegrand("rational integrand has a polynomial part");
}

void require_off_axis(const RationalFunction& g) {
  for (const auto& term : g.terms()) {
    if (term.pole.imag() == 0.0) throw RealPoleError("rational integrand has a pole on the real axis");
  }
}

// Angle of the first ray in the list that no pole of g sits on, or a negative value.
double free_ray_angle(const RationalFunction& g, double t) {
  for (double theta : {0.5 * kPi, 0.5 * kPi - 0.3, 0.25 * kPi, 0.125 * kPi}) {
    const double ray = t > 0.0 ? -theta : theta;
    bool blocked = false;
    for (const auto& term : g.terms()) {
      const double off = std::arg(term.pole) - ray;
      if (std::abs(std::sin(off)) < 1e-12 && std::cos(off) > 0.0) blocked = true;
    }
    if (!blocked) return theta;
  }
  return -1.0;
}

// Closes the half-line on the ray arg(omega) = -theta (t > 0) or +theta
// (t < 0), where e^{-i omega t} decays, and picks up the poles in between.
QuadratureResult rotated_halfline(const RationalFunction& g, double t, double tol, double theta) {
  const bool forward = t > 0.0;
  const double at = std::abs(t);
  const double ray = forward ? -theta : theta;
  const Complex heading = std::polar(1.0, ray);
  const double rate = at * std::sin(theta);
  const double spin = t * std::cos(theta) / rate;

  Complex residues{0.0, 0.0};
  double residue_floor = 0.0;
  std::vector<double> breaks{0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 80.0};
  for (const auto& term : g.terms()) {
    const double angle = std::arg(term.pole);
    const bool enclosed = forward ? (angle < 0.0 && angle > ray) : (angle > 0.0 && angle < ray);
    if (enclosed) {
      const Complex r = pole_residue(term, t);
      residues += r;
      residue_floor += 8.0 * std::numeric_limits<double>::epsilon() * 2.0 * kPi * std::abs(r);
    }
    const double off = angle - ray;
    const double closest = std::abs(term.pole) * std::cos(off) * rate;
    const double spread = std::abs(term.pole) * std::abs(std::sin(off)) * rate;
    for (double u : {closest, closest - spread, closest + spread}) {
      if (u > 0.0 && u < 80.0) breaks.push_back(u);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // u = s |t| sin(theta) along omega = s e^{i ray}.
  detail::RealToComplex laplace = [&](double u) {
    const Complex omega = heading * (u / rate);
    return g(omega) * std::exp(-u) * std::polar(1.0, -spin * u) * heading / rate;
  };
  const auto line = integrate_adaptive(laplace, breaks, tol, interval_budget(breaks.size()));
  const Complex pole_part = (forward ? -2.0 : 2.0) * kPi * kI * residues;
  // e^{-80} of the largest sampled value bounds what lies beyond u = 80.
  const double cut = std::exp(-80.0) * line.abs_integral;
  const double eps = std::numeric_limits<double>::epsilon();
  const double error = line.error + cut + residue_floor + 4.0 * eps * std::abs(line.value) +
                       eps * 80.0 * std::abs(spin) * line.abs_integral;
  return finish(pole_part + line.value, error, line.intervals, QuadratureMethod::RotatedContour, tol);
}

}  // namespace

const char* to_string(QuadratureMethod method) {
  switch (method) {
    case QuadratureMethod::AdaptivePanels:
      return "adaptive-panels";
    case QuadratureMethod::ResidueExact:
      return "residue-exact";
    case QuadratureMethod::TailBounded:
      return "tail-bounded";
    case QuadratureMethod::RotatedContour:
      return "rotated-contour";
  }
  return "unknown";
}

QuadratureResult fourier_fullline(const ComplexIntegrand& g, double t, double tol, std::span<const Feature> features) {
  check_tolerance(tol, t);
  const double weight = 1.0 / (2.0 * kPi);
  Span span = core_span(features, -1.0, 1.0);

  if (t == 0.0) {
    const double s = std::max({std::abs(span.lo), std::abs(span.hi), 1.0});
    const double far = 1e3 * s;
    const ComplexIntegrand even = [&](double w) { return g(w) + g(-w); };
    require_decay(even, far, 1.2, false, "full-line integrand's even part decays too slowly at t = 0");
    const ComplexIntegrand odd_moment = [&](double r) { return 0.5 * r * (g(r) - g(-r)); };
    require_decay([&](double r) { return odd_moment(r) / r; }, far, 0.7, false,
                  "full-line integrand grows at t = 0");

    const auto breaks = layout(-s, s, features, 0.0);
    const auto core = integrate_adaptive(g, breaks, 0.5 * tol / weight, interval_budget(breaks.size()));
    const auto tail = detail::algebraic_tail(even, s, 1, 0.25 * tol / weight, 20000);
    // Jump of the transform at t = 0 from the a / omega part of g.
    const double r = 1e4 * s;
    // The odd moment runs in powers of 1/r^2, so one Richardson step removes
    // the leading correction; a second, from (2r, 4r), bounds what is left.
    const Complex m1 = odd_moment(r);
    const Complex m2 = odd_moment(2.0 * r);
    const Complex m4 = odd_moment(4.0 * r);
    const Complex a = (4.0 * m2 - m1) / 3.0;
    const Complex a_next = (4.0 * m4 - m2) / 3.0;
    const double a_error = std::abs(a - a_next) + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(m2);
    const Complex value = weight * (core.value + tail.value) - 0.5 * kI * a;
    const double error = weight * (core.error + tail.error) + 0.5 * a_error;
    return finish(value, error, core.intervals + tail.intervals, QuadratureMethod::AdaptivePanels, tol);
  }

  require_decay(g, 1e3 * std::max({std::abs(span.lo), std::abs(span.hi), 1.0}), 0.5, true,
                "full-line integrand does not decay");
  const detail::RealToComplex f = [&](double w) { return g(w) * std::exp(Complex{0.0, -w * t}); };
  const auto breaks = layout(span.lo, span.hi, features, t);
  const auto core = integrate_adaptive(f, breaks, 0.5 * tol / weight, interval_budget(breaks.size()));
  const auto right = oscillating_tail(g, f, span.hi, 1, t, 0.25 * tol / weight);
  const auto left = oscillating_tail(g, f, span.lo, -1, t, 0.25 * tol / weight);
  const Complex value = weight * (core.value + right.value + left.value);
  const double reach = std::max(std::abs(span.lo), std::abs(span.hi));
  const double error = weight * (core.error + right.error + left.error +
                                 phase_floor(t, reach, core.abs_integral + right.abs_integral + left.abs_integral));
  const auto method =
      right.bounded && left.bounded ? QuadratureMethod::TailBounded : QuadratureMethod::AdaptivePanels;
  return finish(value, error, core.intervals + right.panels + left.panels, method, tol);
}

QuadratureResult fourier_halfline(const ComplexIntegrand& g, double t, double tol, std::span<const Feature> features) {
  check_tolerance(tol, t);
  Span span = core_span(features, 0.0, 1.0);
  const double hi = std::max(span.hi, 1.0);
  const double far = 1e3 * hi;

  if (t == 0.0) {
    require_decay(g, far, 1.2, false, "half-line integrand decays too slowly at t = 0");
    const auto breaks = layout(0.0, hi, features, 0.0);
    const auto core = integrate_adaptive(g, breaks, 0.5 * tol, interval_budget(breaks.size()));
    const auto tail = detail::algebraic_tail(g, hi, 1, 0.5 * tol, 20000);
    return finish(core.value + tail.value, core.error + tail.error, core.intervals + tail.intervals,
                  QuadratureMethod::AdaptivePanels, tol);
  }

  require_decay(g, far, 0.5, false, "half-line integrand does not decay");
  const detail::RealToComplex f = [&](double w) { return g(w) * std::exp(Complex{0.0, -w * t}); };
  const auto breaks = layout(0.0, hi, features, t);
  const auto core = integrate_adaptive(f, breaks, 0.5 * tol, interval_budget(breaks.size()));
  const auto tail = oscillating_tail(g, f, hi, 1, t, 0.5 * tol);
  const auto method = tail.bounded ? QuadratureMethod::TailBounded : QuadratureMethod::AdaptivePanels;
  const double error = core.error + tail.error + phase_floor(t, hi, core.abs_integral + tail.abs_integral);
  return finish(core.value + tail.value, error, core.intervals + tail.panels, method, tol);
}

QuadratureResult fourier_fullline(const RationalFunction& g, double t, double tol) {
  require_proper(g);
  require_off_axis(g);
  const auto features = features_of(g);
  return fourier_fullline([&](double w) { return g(Complex{w, 0.0}); }, t, tol, features);
}

QuadratureResult fourier_halfline(const RationalFunction& g, double t, double tol, HalfLineStrategy strategy) {
  check_tolerance(tol, t);
  require_proper(g);
  for (const auto& term : g.terms()) {
    const Complex p = term.pole;
    if (p.imag() == 0.0 && p.real() >= 0.0) throw RealPoleError("rational integrand has a pole on the half-line");
  }
  const auto features = features_of(g);
  if (t != 0.0 && strategy != HalfLineStrategy::Panels) {
    const double theta = free_ray_angle(g, t);
    if (theta > 0.0) return rotated_halfline(g, t, tol, theta);
  }
  return fourier_halfline([&](double w) { return g(Complex{w, 0.0}); }, t, tol, features);
}

QuadratureResult evaluate(const FourierIntegral& integral, double tol) {
  if (!integral.integrand) throw PreconditionError("Fourier integral has no integrand");
  const double t = integral.sign == PhaseSign::Negative ? integral.t : -integral.t;
  return integral.support == SpectralSupport::FullLine
             ? fourier_fullline(integral.integrand, t, tol, integral.features)
             : fourier_halfline(integral.integrand, t, tol, integral.features);
}

QuadratureResult residue_fourier(const RationalFunction& g, double t) {
  if (!std::isfinite(t)) throw PreconditionError("time must be finite");
  require_proper(g);
  require_off_axis(g);
  Complex sum{0.0, 0.0};
  const bool lower = t >= 0.0;
  for (const auto& term : g.terms()) {
    if ((term.pole.imag() < 0.0) == lower) sum += pole_residue(term, t);
  }
  // (1/2pi) * (-+2 pi i) * sum of enclosed residues.
  const Complex value = lower ? -kI * sum : kI * sum;
  return QuadratureResult{value, 0.0, 0, QuadratureMethod::ResidueExact};
}

QuadratureResult residue_fourier(const RationalHardyFunction& g, double t) { return residue_fourier(g.function(), t); }

std::vector<Feature> features_of(const RationalFunction& g) {
  std::vector<Feature> out;
  for (const auto& term : g.terms()) {
    out.push_back(Feature{term.pole.real(), std::max(std::abs(term.pole.imag()), 1e-300)});
  }
  return out;
}

CrossValidation cross_validate(const RationalFunction& g, double t, double tol) {
  const auto quadrature = fourier_fullline(g, t, tol);
  const auto residue = residue_fourier(g, t);
  CrossValidation report;
  report.quadrature = quadrature.value;
  report.quadrature_error = quadrature.abs_error_estimate;
  report.residue = residue.value;
  report.difference = std::abs(quadrature.value - residue.value);
  report.allowed = std::max(tol + quadrature.abs_error_estimate, 1e-9 * std::abs(residue.value));
  report.agree = report.difference <= report.allowed;
  return report;
}

}  // namespace gamow
