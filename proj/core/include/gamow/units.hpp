#pragma once

// Internal computations use hbar = 1: a width Gamma is also a decay rate and
// times are measured in inverse energy units. The constants below are only
// needed where results are reported in laboratory units.

namespace gamow::units {

/// Reduced Planck constant in eV s (CODATA 2018).
inline constexpr double kHbarEvS = 6.582119569e-16;

inline constexpr double kNanosecond = 1e-9;

/// tau = hbar / Gamma, with Gamma in eV and tau in seconds.
inline double lifetime_from_width(double gamma_ev) { return kHbarEvS / gamma_ev; }

/// Gamma_R = hbar / tau, with tau in seconds and Gamma_R in eV.
inline double width_from_lifetime(double tau_s) { return kHbarEvS / tau_s; }

/// Converts a time expressed in hbar/eV into seconds.
inline double natural_time_to_seconds(double t) { return t * kHbarEvS; }

}  // namespace gamow::units
