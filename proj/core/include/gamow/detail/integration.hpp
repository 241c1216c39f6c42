#pragma once

// Building blocks for the oscillatory integrals in quadrature.cpp. Exposed in
// a detail header so the unit tests can exercise them directly.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gamow/common.hpp"

namespace gamow::detail {

using RealToComplex = std::function<Complex(double)>;

struct PanelEstimate {
  Complex value;
  double error = 0.0;         ///< QUADPACK-style estimate from the Gauss/Kronrod difference
  double abs_integral = 0.0;  ///< integral of |f|, used for the round-off floor
};

/// 21-point Kronrod rule with its embedded 10-point Gauss rule on [a, b].
PanelEstimate gauss_kronrod21(const RealToComplex& f, double a, double b);

struct AdaptiveResult {
  Complex value;
  double error = 0.0;
  double abs_integral = 0.0;
  int intervals = 0;
  bool converged = false;
};

/// Globally adaptive bisection over the partition given by `breakpoints`
/// (sorted, at least two entries). Stops once the summed error estimate is
/// below `tol` or `max_intervals` is reached.
AdaptiveResult integrate_adaptive(const RealToComplex& f, std::span<const double> breakpoints, double tol,
                                  int max_intervals);

/// Wynn epsilon-algorithm over a sequence of partial sums. Returns the
/// extrapolated limit from the deepest even column, or nothing for fewer than
/// three sums.
std::optional<Complex> wynn_epsilon(std::span<const Complex> partial_sums);

struct TailResult {
  Complex value;
  double error = 0.0;
  double abs_integral = 0.0;
  int panels = 0;
  bool converged = false;
};

/// Integral of f over [start, +inf) (direction = +1) or (-inf, start]
/// (direction = -1), summed in panels of length `panel_length` and
/// accelerated with the epsilon-algorithm.
TailResult oscillatory_tail(const RealToComplex& f, double start, int direction, double panel_length, double tol,
                            int max_panels);

/// Integral of f over [start, +inf) or (-inf, start] for non-oscillatory f
/// decaying faster than 1/omega, through omega = start / u.
AdaptiveResult algebraic_tail(const RealToComplex& f, double start, int direction, double tol, int max_intervals);

}  // namespace gamow::detail
