#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gamow/spectral.hpp"

namespace gamow {

/// Cross sections sampled on an energy grid, reproducible from the seed.
struct LineshapeSample {
  std::vector<double> energies;
  std::vector<double> cross_sections;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

/// amplitude_scale / ((E - E_R)^2 + (Gamma/2)^2) plus Gaussian noise of
/// standard deviation noise_sigma, clipped at zero.
LineshapeSample generate_lineshape(const ResonanceLine& line, std::span<const double> energies,
                                   double amplitude_scale, double noise_sigma, std::uint64_t seed);

struct LineshapeFit {
  double scale = 0.0;
  double e_r = 0.0;
  double gamma = 0.0;
  double scale_error = 0.0;
  double e_r_error = 0.0;
  double gamma_error = 0.0;
  int iterations = 0;
};

/// Levenberg-Marquardt fit of (scale, E_R, Gamma). Throws NoPeakError when
/// the maximum sits on the grid boundary, ConvergenceError after 200 iterations.
LineshapeFit fit_lineshape(const LineshapeSample& sample);

/// Decay counts in bins [bin_edges[i], bin_edges[i+1]) of time (hbar = 1 units).
struct DecayCounts {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t n_initial = 0;
};

/// Expected counts N (e^{-Gamma t_i} - e^{-Gamma t_{i+1}}); Poisson sampled
/// when `poisson` is set, otherwise rounded to the nearest integer.
DecayCounts generate_decay_counts(const ResonanceLine& line, std::span<const double> bin_edges,
                                  std::uint64_t n_initial, std::uint64_t seed, bool poisson);

enum class DecayFitMethod { MaximumLikelihood, LogLinear };

struct DecayFit {
  double gamma_r = 0.0;  ///< decay rate; an energy since hbar = 1
  double gamma_r_error = 0.0;
  int iterations = 0;
  DecayFitMethod method = DecayFitMethod::MaximumLikelihood;
};

/// Binned Poisson maximum likelihood with the normalization profiled out, so
/// only the shape of the counts matters. Falls back to a weighted log-linear
/// regression if the likelihood has no interior maximum.
DecayFit fit_decay_rate(const DecayCounts& counts);

/// Width from the lineshape against rate from the counts, both in eV.
struct WidthLifetimeReport {
  double gamma_fit = 0.0;    ///< eV
  double gamma_r_fit = 0.0;  ///< eV
  double tau_fit = 0.0;      ///< s, hbar / gamma_r_fit
  double tau_from_width = 0.0;  ///< s, hbar / gamma_fit
  double ratio = 0.0;        ///< gamma_fit / gamma_r_fit
  double gamma_fit_error = 0.0;
  double gamma_r_fit_error = 0.0;
  double tau_fit_error = 0.0;
  double tau_from_width_error = 0.0;
  double ratio_error = 0.0;
};

WidthLifetimeReport compare_width_lifetime(double gamma_fit_ev, double gamma_r_fit_ev, double gamma_fit_error = 0.0,
                                           double gamma_r_fit_error = 0.0);

/// Seed of replica `index` derived from `base` by splitmix64.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Monte Carlo round trip: generate and fit both data sets per replica.
struct RoundTripConfig {
  std::vector<double> energies;
  double amplitude_scale = 1.0;
  double noise_sigma = 0.0;
  std::vector<double> bin_edges;
  std::uint64_t n_initial = 1'000'000;
  bool poisson = true;
  int replicas = 100;
  std::uint64_t seed = 0;
  double decay_gamma = 0.0;  ///< rate behind the counts; 0 means the line's width
};

struct RoundTripSummary {
  std::vector<double> gamma;    ///< per replica, from the lineshape
  std::vector<double> gamma_r;  ///< per replica, from the counts
  double mean_gamma = 0.0;
  double mean_gamma_r = 0.0;
  double mean_ratio = 0.0;
  double sd_gamma = 0.0;
  double sd_gamma_r = 0.0;
};

/// Replicas run in parallel; replica i uses derive_seed(seed, 2i) for the
/// lineshape and derive_seed(seed, 2i + 1) for the counts.
RoundTripSummary run_round_trip(const ResonanceLine& line, const RoundTripConfig& config);

/// Delimited-text exchange: "E,sigma" and "t_lo,t_hi,count" columns, with
/// '#' comment lines and an optional header row.
void write_lineshape_csv(std::ostream& out, const LineshapeSample& sample);
LineshapeSample read_lineshape_csv(std::istream& in);
void write_decay_csv(std::ostream& out, const DecayCounts& counts);
DecayCounts read_decay_csv(std::istream& in);

}  // namespace gamow
