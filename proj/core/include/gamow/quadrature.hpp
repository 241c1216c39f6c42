#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gamow/common.hpp"
#include "gamow/rational.hpp"
#include "gamow/spectral.hpp"

namespace gamow {

/// The non-oscillatory factor g(omega) of a Fourier integral, sampled on the real axis.
using ComplexIntegrand = std::function<Complex(double)>;

/// Sign of the exponent in the oscillatory factor.
enum class PhaseSign {
  Negative,  ///< e^{-i omega t}: the inverse transform over omega
  Positive,  ///< e^{+i omega t}
};

/// A structure of the integrand (peak, pole shadow) the panel layout should resolve.
struct Feature {
  double center = 0.0;
  double width = 1.0;
};

enum class QuadratureMethod {
  AdaptivePanels,  ///< half-period panels with accelerated tail sums
  ResidueExact,    ///< closed-contour residue sum
  TailBounded,     ///< panels over a finite core, tails below tol/10 by the integration-by-parts bound
  RotatedContour,  ///< half-line integral moved onto a ray into the decaying half-plane plus enclosed residues
};

const char* to_string(QuadratureMethod method);

struct QuadratureResult {
  Complex value;
  double abs_error_estimate = 0.0;  ///< zero only for ResidueExact
  int panels_used = 0;
  QuadratureMethod method = QuadratureMethod::AdaptivePanels;
};

inline constexpr double kDefaultTolerance = 1e-8;

/// (1/2pi) * integral over the real line of g(omega) e^{-i omega t}. At t = 0
/// the value is the t -> 0+ limit (theta(0) = 1), i.e. the principal value
/// plus the jump carried by the 1/omega part of g.
QuadratureResult fourier_fullline(const ComplexIntegrand& g, double t, double tol = kDefaultTolerance,
                                  std::span<const Feature> features = {});

/// integral over [0, inf) of g(omega) e^{-i omega t}; no 1/2pi factor.
QuadratureResult fourier_halfline(const ComplexIntegrand& g, double t, double tol = kDefaultTolerance,
                                  std::span<const Feature> features = {});

QuadratureResult fourier_fullline(const RationalFunction& g, double t, double tol = kDefaultTolerance);

enum class HalfLineStrategy {
  Auto,            ///< rotated contour whenever t != 0; the ray steps off the imaginary axis if a pole sits there
  Panels,          ///< always sum real-axis panels
};

QuadratureResult fourier_halfline(const RationalFunction& g, double t, double tol = kDefaultTolerance,
                                  HalfLineStrategy strategy = HalfLineStrategy::Auto);

/// A Fourier integral described as data.
struct FourierIntegral {
  ComplexIntegrand integrand;
  double t = 0.0;
  SpectralSupport support = SpectralSupport::FullLine;
  PhaseSign sign = PhaseSign::Negative;
  std::vector<Feature> features;
};

QuadratureResult evaluate(const FourierIntegral& integral, double tol = kDefaultTolerance);

/// Exact (1/2pi) * integral of g(omega) e^{-i omega t} over the real line by
/// residues: lower half-plane for t >= 0, upper for t < 0.
QuadratureResult residue_fourier(const RationalFunction& g, double t);
QuadratureResult residue_fourier(const RationalHardyFunction& g, double t);

/// Peak positions and widths implied by the poles of g.
std::vector<Feature> features_of(const RationalFunction& g);

struct CrossValidation {
  Complex quadrature;
  double quadrature_error = 0.0;
  Complex residue;
  double difference = 0.0;
  double allowed = 0.0;  ///< max(tol + error estimate, 1e-9 |residue|)
  bool agree = false;
};

CrossValidation cross_validate(const RationalFunction& g, double t, double tol = kDefaultTolerance);

}  // namespace gamow
