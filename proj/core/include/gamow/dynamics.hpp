#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gamow/common.hpp"
#include "gamow/quadrature.hpp"
#include "gamow/rational.hpp"
#include "gamow/spectral.hpp"

namespace gamow {

/// Test function psi against which a Gamow amplitude is evaluated. An empty
/// optional stands for psi = 1, i.e. the bare Lorentzian kernel.
using TestFunction = std::optional<RationalHardyFunction>;

/// Short identifier of a test function for reports: "unit" or "rational(n)".
std::string describe(const TestFunction& psi);

struct AmplitudeValue {
  Complex value;
  double abs_error = 0.0;
  QuadratureMethod method = QuadratureMethod::ResidueExact;
};

struct ModelDescriptor {
  ResonanceLine line;
  SpectralSupport support = SpectralSupport::FullLine;
  std::string test_function = "unit";
};

/// Amplitudes sampled on a strictly increasing time grid.
struct AmplitudeSeries {
  std::vector<double> times;
  std::vector<Complex> values;
  std::vector<double> errors;
  ModelDescriptor model;
};

/// (i/2pi) * integral over the support of psi(omega) e^{-i omega t} / (omega - z_R).
///
/// FullLine evolves the Gamow vector as a semigroup: exactly zero for t < 0,
/// and theta(t) e^{-i z_R t} psi(z_R) by residues for t >= 0. HalfLine has no
/// closed form and is integrated numerically; it is nonzero for t < 0.
AmplitudeValue gamow_amplitude(const ResonanceLine& line, const TestFunction& psi, double t,
                               SpectralSupport support, double tol = kDefaultTolerance);

/// The literal full-line integral by real-axis quadrature, with no semigroup
/// gate. For t < 0 it picks up the upper half-plane poles of psi, which decay
/// like e^{-Im(beta) |t|}; it vanishes only in the bare-kernel case.
AmplitudeValue gamow_amplitude_quadrature(const ResonanceLine& line, const TestFunction& psi, double t,
                                          double tol = kDefaultTolerance);

/// gamow_amplitude on every grid point (computed in parallel, assembled in order).
AmplitudeSeries gamow_amplitude_series(const ResonanceLine& line, const TestFunction& psi,
                                       std::span<const double> times, SpectralSupport support,
                                       double tol = kDefaultTolerance);

/// A(t) = integral over the support of rho(E) e^{-i E t} dE with rho the
/// Lorentzian normalized to unit mass on that support.
AmplitudeValue survival_amplitude(const ResonanceLine& line, SpectralSupport support, double t,
                                  double tol = kDefaultTolerance);

/// |A(t)|^2.
double survival_probability(const ResonanceLine& line, SpectralSupport support, double t,
                            double tol = kDefaultTolerance);

struct PrecursorReport {
  AmplitudeSeries amplitudes;
  std::vector<double> probabilities;  ///< |amplitude|^2 per grid point
  double max_probability = 0.0;
  double time_of_max = 0.0;
};

/// Tabulates |gamow_amplitude|^2 on a grid of strictly negative, increasing times.
PrecursorReport precursor_report(const ResonanceLine& line, const TestFunction& psi, SpectralSupport support,
                                 std::span<const double> times, double tol = kDefaultTolerance);

/// Least-squares slope of log P vs log t for the HalfLine survival
/// probability on n log-spaced points in [t_min, t_max]. Requires
/// t_min >= 20 tau. Throws WindowTooEarlyError when the slopes of the first
/// and last thirds of the window differ by more than 0.25.
double tail_exponent(const ResonanceLine& line, double t_min, double t_max, int n_points,
                     SpectralSupport support = SpectralSupport::HalfLine);

/// Time t* at which e^{-Gamma t} = C / t^2 with C = (rho(0) / norm)^2, the
/// latest crossing of the exponential and the power-law branch. Searched
/// from tau up to 1e6 tau.
double crossover_time(const ResonanceLine& line, SpectralSupport support = SpectralSupport::HalfLine);

struct PoleComponent {
  Complex pole;
  Complex coefficient;
};

/// Resonance poles (simple, lower half-plane) plus the remainder.
struct PoleBackgroundSplit {
  std::vector<PoleComponent> pole_terms;
  RationalFunction background;

  /// sum_i c_i / (omega - z_i) + background.
  RationalFunction reassemble() const;
};

PoleBackgroundSplit pole_background_split(const RationalFunction& phi);

/// |gamow_amplitude(t - r/c)|^2: detection probability at distance r of a
/// signal travelling at speed c, in the single retarded amplitude picture.
double fermi_retarded_probability(const ResonanceLine& line, const TestFunction& psi, SpectralSupport support,
                                  double r, double c, double t, double tol = kDefaultTolerance);

}  // namespace gamow
