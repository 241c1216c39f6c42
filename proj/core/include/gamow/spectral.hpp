#pragma once

#include <span>
#include <vector>

#include "gamow/common.hpp"
#include "gamow/rational.hpp"

namespace gamow {

/// Breit-Wigner resonance: position E_R > 0, width Gamma_R > 0 and the
/// complex pole z_R = E_R - i Gamma_R / 2, which is always derived so it can
/// never drift from the stored parameters.
class ResonanceLine {
 public:
  ResonanceLine(double e_r, double gamma);

  double e_r() const { return e_r_; }
  double gamma() const { return gamma_; }
  Complex z_r() const { return {e_r_, -0.5 * gamma_}; }

  /// Mean life tau = 1 / Gamma in units with hbar = 1.
  double lifetime() const { return 1.0 / gamma_; }

 private:
  double e_r_;
  double gamma_;
};

/// Energy domain of an integral: [0, inf) or (-inf, inf).
enum class SpectralSupport { HalfLine, FullLine };

const char* to_string(SpectralSupport support);

/// Half-plane in which a Hardy-class function is analytic.
enum class HalfPlane { Upper, Lower };

enum class AmplitudeScale {
  Normalized,  ///< i sqrt(Gamma/2pi) / (omega - z_R); |.|^2 integrates to 1 on the full line
  Bare,        ///< i / (omega - z_R)
};

Complex bw_amplitude(const ResonanceLine& line, Complex omega,
                     AmplitudeScale scale = AmplitudeScale::Normalized);

/// Normalized Lorentzian (Gamma/2pi) / ((E - E_R)^2 + (Gamma/2)^2); zero for
/// E < 0 on the half line.
double bw_density(const ResonanceLine& line, double e, SpectralSupport support);

/// Exact value of the Lorentzian's mass on [0, inf): 1/2 + arctan(2 E_R / Gamma) / pi.
double norm_truncated_closed_form(const ResonanceLine& line);

/// Partial sum 1 - (1/pi) sum_{k=0}^{order} (-1)^k x^{2k+1} / (2k+1) with
/// x = Gamma / (2 E_R). Throws DomainError when x >= 1.
double norm_truncated_series(const ResonanceLine& line, int order);

/// The amplitude i scale / (omega - z_R) as a rational function.
RationalFunction bw_amplitude_rational(const ResonanceLine& line,
                                       AmplitudeScale scale = AmplitudeScale::Normalized);

/// The density's analytic continuation (i/2pi) [1/(omega - z_R) - 1/(omega - conj z_R)].
RationalFunction bw_density_rational(const ResonanceLine& line);

/// Lorentzian restricted to a support, together with its norm on that support.
class EnergyDensity {
 public:
  EnergyDensity(ResonanceLine line, SpectralSupport support);

  const ResonanceLine& line() const { return line_; }
  SpectralSupport support() const { return support_; }

  /// Mass of the Lorentzian on the support: 1 on the full line, in (1/2, 1) on the half line.
  double normalization() const { return normalization_; }

  double operator()(double e) const { return bw_density(line_, e, support_); }

  /// Density renormalized to unit mass on the support.
  double probability_density(double e) const { return (*this)(e) / normalization_; }

 private:
  ResonanceLine line_;
  SpectralSupport support_;
  double normalization_;
};

/// Rational test function analytic in one half-plane and decaying at least
/// like omega^-2, so its semicircle contribution vanishes. The Lower case
/// (all poles in the upper half-plane) models the observables psi^-.
class RationalHardyFunction {
 public:
  RationalHardyFunction(RationalFunction f, HalfPlane analytic_in);

  /// psi(omega) = -kappa^2 / (omega - i kappa)^2: analytic in the lower
  /// half-plane, psi(0) = 1, |psi| <= 1 on the real axis. Models a detector
  /// with energy bandwidth kappa.
  static RationalHardyFunction detector(double bandwidth);

  Complex operator()(Complex omega) const { return f_(omega); }

  const RationalFunction& function() const { return f_; }
  HalfPlane half_plane() const { return half_plane_; }

  /// omega * psi(omega); throws PreconditionError if the product no longer
  /// decays fast enough to be a Hardy test function.
  RationalHardyFunction times_omega() const;

 private:
  RationalFunction f_;
  HalfPlane half_plane_;
};

Complex hardy_eval(const RationalHardyFunction& f, Complex omega);

struct SemicircleDecayReport {
  std::vector<double> radii;
  std::vector<double> bounds;  ///< max |f| * R sampled over each semicircle
  bool monotone_decreasing = false;
  bool decaying = false;  ///< decreasing and falling toward zero
};

/// Samples R |f(R e^{i theta})| over the semicircle in `half_plane` at each radius.
SemicircleDecayReport verify_semicircle_decay(const RationalFunction& f, HalfPlane half_plane,
                                              std::span<const double> radii, int angles = 1000);

SemicircleDecayReport verify_semicircle_decay(const RationalHardyFunction& f,
                                              std::span<const double> radii, int angles = 1000);

}  // namespace gamow
