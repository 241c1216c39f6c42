#include "gamow/spectral.hpp"

#include <cmath>
#include <string>

#include "gamow/error.hpp"

namespace gamow {

ResonanceLine::ResonanceLine(double e_r, double gamma) : e_r_(e_r), gamma_(gamma) {
  if (!(e_r > 0.0) || !std::isfinite(e_r)) throw PreconditionError("resonance energy E_R must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw PreconditionError("resonance width Gamma must be positive");
}

const char* to_string(SpectralSupport support) {
  return support == SpectralSupport::HalfLine ? "half" : "full";
}

Complex bw_amplitude(const ResonanceLine& line, Complex omega, AmplitudeScale scale) {
  const Complex delta = omega - line.z_r();
  if (delta == Complex{0.0, 0.0}) throw PoleEvaluationError("Breit-Wigner amplitude evaluated at z_R");
  const double factor = scale == AmplitudeScale::Normalized ? std::sqrt(line.gamma() / (2.0 * kPi)) : 1.0;
  return kI * factor / delta;
}

double bw_density(const ResonanceLine& line, double e, SpectralSupport support) {
  if (support == SpectralSupport::HalfLine && e < 0.0) return 0.0;
  const double half_width = 0.5 * line.gamma();
  const double offset = e - line.e_r();
  return (line.gamma() / (2.0 * kPi)) / (offset * offset + half_width * half_width);
}

double norm_truncated_closed_form(const ResonanceLine& line) {
  return 0.5 + std::atan(2.0 * line.e_r() / line.gamma()) / kPi;
}

double norm_truncated_series(const ResonanceLine& line, int order) {
  if (order < 0) throw PreconditionError("series order must be non-negative");
  const double x = line.gamma() / (2.0 * line.e_r());
  if (x >= 1.0) throw DomainError("arctan series needs Gamma / (2 E_R) < 1");
  double sum = 0.0;
  double power = x;
  for (int k = 0; k <= order; ++k) {
    sum += (k % 2 == 0 ? 1.0 : -1.0) * power / (2 * k + 1);
    power *= x * x;
  }
  return 1.0 - sum / kPi;
}

RationalFunction bw_amplitude_rational(const ResonanceLine& line, AmplitudeScale scale) {
  const double factor = scale == AmplitudeScale::Normalized ? std::sqrt(line.gamma() / (2.0 * kPi)) : 1.0;
  return RationalFunction::simple_pole(line.z_r(), kI * factor);
}

RationalFunction bw_density_rational(const ResonanceLine& line) {
  const Complex c = kI / (2.0 * kPi);
  return RationalFunction({PoleTerm{line.z_r(), {c}}, PoleTerm{std::conj(line.z_r()), {-c}}});
}

EnergyDensity::EnergyDensity(ResonanceLine line, SpectralSupport support)
    : line_(line),
      support_(support),
      normalization_(support == SpectralSupport::FullLine ? 1.0 : norm_truncated_closed_form(line)) {}

RationalHardyFunction::RationalHardyFunction(RationalFunction f, HalfPlane analytic_in)
    : f_(std::move(f)), half_plane_(analytic_in) {
  for (const auto& t : f_.terms()) {
    const double im = t.pole.imag();
    const bool ok = half_plane_ == HalfPlane::Lower ? im > 0.0 : im < 0.0;
    if (!ok) {
      throw PreconditionError(std::string("Hardy function has a pole in its analytic half-plane (") +
                              (half_plane_ == HalfPlane::Lower ? "lower" : "upper") + ")");
    }
  }
  const int decay = f_.decay_order();
  if (decay < 2) throw PreconditionError("Hardy test function must decay at least like omega^-2");
}

RationalHardyFunction RationalHardyFunction::detector(double bandwidth) {
  if (!(bandwidth > 0.0)) throw PreconditionError("detector bandwidth must be positive");
  const Complex kappa2 = bandwidth * bandwidth;
  return RationalHardyFunction(RationalFunction({PoleTerm{Complex{0.0, bandwidth}, {0.0, -kappa2}}}),
                               HalfPlane::Lower);
}

RationalHardyFunction RationalHardyFunction::times_omega() const {
  return RationalHardyFunction(f_.times_omega(), half_plane_);
}

Complex hardy_eval(const RationalHardyFunction& f, Complex omega) { return f(omega); }

SemicircleDecayReport verify_semicircle_decay(const RationalFunction& f, HalfPlane half_plane,
                                              std::span<const double> radii, int angles) {
  SemicircleDecayReport report;
  const double sign = half_plane == HalfPlane::Upper ? 1.0 : -1.0;
  double previous_radius = 0.0;
  for (double radius : radii) {
    if (!(radius > previous_radius)) throw PreconditionError("radii must be positive and increasing");
    previous_radius = radius;
    double bound = 0.0;
    for (int k = 0; k <= angles; ++k) {
      const double theta = sign * kPi * k / angles;
      bound = std::max(bound, std::abs(f(std::polar(radius, theta))) * radius);
    }
    report.radii.push_back(radius);
    report.bounds.push_back(bound);
  }
  bool decreasing = report.bounds.size() >= 2;
  for (std::size_t i = 1; i < report.bounds.size(); ++i) decreasing = decreasing && report.bounds[i] < report.bounds[i - 1];
  report.monotone_decreasing = decreasing;
  // Toward zero: the bound must fall at least like R^{-1/2} across the radii.
  if (decreasing) {
    const double ratio = report.radii.front() / report.radii.back();
    report.decaying = report.bounds.back() <= report.bounds.front() * std::sqrt(ratio);
  }
  return report;
}

SemicircleDecayReport verify_semicircle_decay(const RationalHardyFunction& f, std::span<const double> radii,
                                              int angles) {
  return verify_semicircle_decay(f.function(), f.half_plane(), radii, angles);
}

}  // namespace gamow
