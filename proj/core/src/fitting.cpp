#include "gamow/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "gamow/error.hpp"
#include "gamow/parallel.hpp"
#include "gamow/units.hpp"

namespace gamow {

namespace {

constexpr int kMaxIterations = 200;

struct ScaledData {
  std::vector<double> x;
  std::vector<double> y;
  double center;
  double half_span;
  double y_max;
};

// Residual vector and Jacobian of a / ((x - x0)^2 + g^2 / 4) at p = (a, x0, g).
double evaluate_model(const ScaledData& d, const Eigen::Vector3d& p, Eigen::VectorXd& r, Eigen::MatrixXd& j) {
  const auto n = static_cast<Eigen::Index>(d.x.size());
  r.resize(n);
  j.resize(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = d.x[i] - p[1];
    const double den = u * u + 0.25 * p[2] * p[2];
    const double model = p[0] / den;
    r[i] = d.y[i] - model;
    j(i, 0) = 1.0 / den;
    j(i, 1) = 2.0 * p[0] * u / (den * den);
    j(i, 2) = -0.5 * p[0] * p[2] / (den * den);
  }
  return r.squaredNorm();
}

double half_max_crossing(const ScaledData& d, std::size_t peak, int direction) {
  const double half = 0.5 * d.y[peak];
  for (std::size_t i = peak;;) {
    const std::size_t next = direction > 0 ? i + 1 : i - 1;
    if (d.y[next] < half) {
      const double f = (d.y[i] - half) / (d.y[i] - d.y[next]);
      return std::abs(d.x[i] + f * (d.x[next] - d.x[i]) - d.x[peak]);
    }
    i = next;
    if (i == 0 || i + 1 == d.x.size()) return -1.0;
  }
}

// Derivatives of the profiled binned log-likelihood in the rate.
struct Score {
  double value;
  double slope;
};

Score decay_score(const DecayCounts& c, double rate) {
  const double a0 = c.bin_edges.front();
  double n_total = 0.0;
  double sum_n_l = 0.0;
  double sum_n_dl = 0.0;
  double sw = 0.0;
  double swl = 0.0;
  double swll = 0.0;
  for (std::size_t i = 0; i < c.counts.size(); ++i) {
    const double a = c.bin_edges[i];
    const double delta = c.bin_edges[i + 1] - a;
    const double em1 = std::expm1(rate * delta);
    const double l = -(a - a0) + delta / em1;  // shifted by a0, which cancels in the score
    const double dl = -delta * delta * (em1 + 1.0) / (em1 * em1);
    const double w = std::exp(-rate * (a - a0)) * -std::expm1(-rate * delta);
    const double n = static_cast<double>(c.counts[i]);
    n_total += n;
    sum_n_l += n * l;
    sum_n_dl += n * dl;
    sw += w;
    swl += w * l;
    swll += w * (l * l + dl);
  }
  const double mean = swl / sw;
  return Score{sum_n_l - n_total * mean, sum_n_dl - n_total * (swll / sw - mean * mean)};
}

// Weighted regression of log(count / width) on bin midpoints.
DecayFit log_linear(const DecayCounts& c) {
  double sw = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < c.counts.size(); ++i) {
    if (c.counts[i] == 0) continue;
    const double w = static_cast<double>(c.counts[i]);
    const double width = c.bin_edges[i + 1] - c.bin_edges[i];
    const double x = 0.5 * (c.bin_edges[i] + c.bin_edges[i + 1]);
    const double y = std::log(w / width);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  const double det = sw * sxx - sx * sx;
  const double slope = (sw * sxy - sx * sy) / det;
  return DecayFit{-slope, std::sqrt(sw / det), 0, DecayFitMethod::LogLinear};
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

// Numeric rows of a delimited file; '#' lines and one leading header row are skipped.
std::vector<std::vector<double>> read_rows(std::istream& in, std::size_t columns, std::string& comments) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') {
      comments += line + '\n';
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    bool numeric = true;
    while (start <= line.size()) {
      const std::size_t end = std::min(line.find(',', start), line.size());
      double value = 0.0;
      if (!parse_double(std::string_view(line).substr(start, end - start), value)) numeric = false;
      row.push_back(value);
      start = end + 1;
    }
    if (!numeric) {
      if (rows.empty() && !header_seen) {
        header_seen = true;
        continue;
      }
      throw PreconditionError("line " + std::to_string(line_number) + ": expected numeric columns");
    }
    if (row.size() != columns) {
      throw PreconditionError("line " + std::to_string(line_number) + ": expected " + std::to_string(columns) +
                              " columns, found " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_number(std::ostream& out, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  out << buffer;
}

}  // namespace

LineshapeSample generate_lineshape(const ResonanceLine& line, std::span<const double> energies,
                                   double amplitude_scale, double noise_sigma, std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) throw PreconditionError("noise sigma must be non-negative");
  LineshapeSample sample{{energies.begin(), energies.end()}, {}, noise_sigma, seed};
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double hw2 = 0.25 * line.gamma() * line.gamma();
  sample.cross_sections.reserve(energies.size());
  for (double e : energies) {
    const double u = e - line.e_r();
    double value = amplitude_scale / (u * u + hw2);
    if (noise_sigma > 0.0) value += noise_sigma * noise(engine);
    sample.cross_sections.push_back(std::max(value, 0.0));
  }
  return sample;
}

LineshapeFit fit_lineshape(const LineshapeSample& sample) {
  const auto& e = sample.energies;
  const auto& s = sample.cross_sections;
  if (e.size() != s.size()) throw PreconditionError("lineshape grid and values differ in length");
  if (e.size() < 5) throw PreconditionError("lineshape fit needs at least 5 points");
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (!(e[i] > e[i - 1])) throw PreconditionError("lineshape energies must be strictly increasing");
  }

  const auto peak = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
  if (!(s[peak] > 0.0)) throw NoPeakError("lineshape has no positive values");
  if (peak == 0 || peak + 1 == s.size()) throw NoPeakError("lineshape maximum lies on the edge of the energy window");

  ScaledData d;
  d.center = 0.5 * (e.front() + e.back());
  d.half_span = 0.5 * (e.back() - e.front());
  d.y_max = s[peak];
  for (std::size_t i = 0; i < e.size(); ++i) {
    d.x.push_back((e[i] - d.center) / d.half_span);
    d.y.push_back(s[i] / d.y_max);
  }

  const double left = half_max_crossing(d, peak, -1);
  const double right = half_max_crossing(d, peak, +1);
  double fwhm = 0.0;
  if (left > 0.0 && right > 0.0) {
    fwhm = left + right;
  } else if (left > 0.0 || right > 0.0) {
    fwhm = 2.0 * std::max(left, right);
  } else {
    fwhm = d.x[peak + 1] - d.x[peak - 1];
  }
  Eigen::Vector3d p(0.25 * fwhm * fwhm, d.x[peak], fwhm);

  Eigen::VectorXd r;
  Eigen::MatrixXd j;
  double chi2 = evaluate_model(d, p, r, j);
  double lambda = 1e-3;
  int iteration = 0;
  bool converged = false;
  for (; iteration < kMaxIterations && !converged; ++iteration) {
    const Eigen::Matrix3d jtj = j.transpose() * j;
    const Eigen::Vector3d jtr = j.transpose() * r;
    for (;;) {
      Eigen::Matrix3d damped = jtj;
      damped.diagonal() *= 1.0 + lambda;
      const Eigen::Vector3d step = damped.ldlt().solve(jtr);
      const Eigen::Vector3d trial = p + step;
      Eigen::VectorXd r_trial;
      Eigen::MatrixXd j_trial;
      const double chi2_trial = evaluate_model(d, trial, r_trial, j_trial);
      if (std::isfinite(chi2_trial) && chi2_trial <= chi2) {
        // The centre sits near 0 in scaled coordinates, so its step is measured against the width.
        const double width = std::max(std::abs(trial[2]), 1e-300);
        const double relative = std::max({std::abs(step[0]) / std::max(std::abs(trial[0]), 1e-300),
                                          std::abs(step[1]) / width, std::abs(step[2]) / width});
        p = trial;
        r = std::move(r_trial);
        j = std::move(j_trial);
        chi2 = chi2_trial;
        lambda = std::max(lambda * 0.1, 1e-12);
        converged = relative < 1e-10 || chi2 == 0.0;
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e12) {
        // No downhill step left at this precision: the current point is the minimum.
        converged = true;
        break;
      }
    }
  }
  if (!converged) throw ConvergenceError("lineshape fit did not converge in 200 iterations");

  LineshapeFit fit;
  fit.iterations = iteration;
  fit.e_r = d.center + d.half_span * p[1];
  fit.gamma = d.half_span * std::abs(p[2]);
  fit.scale = d.y_max * p[0] * d.half_span * d.half_span;
  const auto dof = static_cast<double>(e.size()) - 3.0;
  if (dof > 0.0) {
    const Eigen::Matrix3d cov = (chi2 / dof) * (j.transpose() * j).inverse();
    fit.scale_error = d.y_max * d.half_span * d.half_span * std::sqrt(std::max(cov(0, 0), 0.0));
    fit.e_r_error = d.half_span * std::sqrt(std::max(cov(1, 1), 0.0));
    fit.gamma_error = d.half_span * std::sqrt(std::max(cov(2, 2), 0.0));
  }
  return fit;
}

DecayCounts generate_decay_counts(const ResonanceLine& line, std::span<const double> bin_edges,
                                  std::uint64_t n_initial, std::uint64_t seed, bool poisson) {
  if (bin_edges.size() < 2) throw PreconditionError("need at least one bin");
  for (std::size_t i = 0; i < bin_edges.size(); ++i) {
    if (!(bin_edges[i] >= 0.0)) throw PreconditionError("bin edges must be non-negative");
    if (i > 0 && !(bin_edges[i] > bin_edges[i - 1])) throw PreconditionError("bin edges must be increasing");
  }
  DecayCounts out{{bin_edges.begin(), bin_edges.end()}, {}, n_initial};
  std::mt19937_64 engine(seed);
  const double n = static_cast<double>(n_initial);
  const double rate = line.gamma();
  for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i) {
    // e^{-a} - e^{-b} = e^{-a} (1 - e^{-(b - a)}) without cancellation.
    const double expected =
        n * std::exp(-rate * bin_edges[i]) * -std::expm1(-rate * (bin_edges[i + 1] - bin_edges[i]));
    std::uint64_t count = 0;
    if (poisson) {
      if (expected > 0.0) count = std::poisson_distribution<std::uint64_t>(expected)(engine);
    } else {
      count = static_cast<std::uint64_t>(std::llround(expected));
    }
    out.counts.push_back(count);
  }
  return out;
}

DecayFit fit_decay_rate(const DecayCounts& c) {
  if (c.bin_edges.size() != c.counts.size() + 1) throw PreconditionError("need one more bin edge than counts");
  for (std::size_t i = 1; i < c.bin_edges.size(); ++i) {
    if (!(c.bin_edges[i] > c.bin_edges[i - 1])) throw PreconditionError("bin edges must be increasing");
  }
  const auto non_empty = std::count_if(c.counts.begin(), c.counts.end(), [](std::uint64_t n) { return n > 0; });
  if (non_empty == 0) throw PreconditionError("all decay bins are empty");
  if (non_empty < 3) throw PreconditionError("decay fit needs at least 3 non-empty bins");

  const DecayFit initial = log_linear(c);
  double guess = initial.gamma_r;
  if (!(guess > 0.0) || !std::isfinite(guess)) {
    guess = 1.0 / (c.bin_edges.back() - c.bin_edges.front());
  }

  // S(rate) decreases; bracket its root by geometric expansion.
  double lo = guess;
  double hi = guess;
  for (int k = 0; decay_score(c, lo).value < 0.0; ++k) {
    lo *= 0.5;
    if (k > 200) return initial;
  }
  for (int k = 0; decay_score(c, hi).value > 0.0; ++k) {
    hi *= 2.0;
    if (k > 200) return initial;
  }

  double rate = std::clamp(guess, lo, hi);
  int iteration = 0;
  for (; iteration < kMaxIterations; ++iteration) {
    const Score s = decay_score(c, rate);
    if (s.value == 0.0) break;
    if (s.value > 0.0) {
      lo = rate;
    } else {
      hi = rate;
    }
    double next = s.slope < 0.0 ? rate - s.value / s.slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double change = std::abs(next - rate);
    rate = next;
    if (change <= 1e-15 * rate || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * rate) break;
  }
  if (iteration == kMaxIterations) throw ConvergenceError("decay-rate likelihood did not converge");

  const double information = -decay_score(c, rate).slope;
  return DecayFit{rate, information > 0.0 ? 1.0 / std::sqrt(information) : 0.0, iteration + 1,
                  DecayFitMethod::MaximumLikelihood};
}

WidthLifetimeReport compare_width_lifetime(double gamma_fit_ev, double gamma_r_fit_ev, double gamma_fit_error,
                                           double gamma_r_fit_error) {
  if (!(gamma_fit_ev > 0.0) || !(gamma_r_fit_ev > 0.0)) throw PreconditionError("widths must be positive");
  if (!(gamma_fit_error >= 0.0) || !(gamma_r_fit_error >= 0.0))
    throw PreconditionError("uncertainties must be non-negative");
  WidthLifetimeReport report;
  report.gamma_fit = gamma_fit_ev;
  report.gamma_r_fit = gamma_r_fit_ev;
  report.gamma_fit_error = gamma_fit_error;
  report.gamma_r_fit_error = gamma_r_fit_error;
  report.tau_fit = units::lifetime_from_width(gamma_r_fit_ev);
  report.tau_from_width = units::lifetime_from_width(gamma_fit_ev);
  report.ratio = gamma_fit_ev / gamma_r_fit_ev;
  const double rel_fit = gamma_fit_error / gamma_fit_ev;
  const double rel_rate = gamma_r_fit_error / gamma_r_fit_ev;
  report.tau_fit_error = report.tau_fit * rel_rate;
  report.tau_from_width_error = report.tau_from_width * rel_fit;
  report.ratio_error = report.ratio * std::hypot(rel_fit, rel_rate);
  return report;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RoundTripSummary run_round_trip(const ResonanceLine& line, const RoundTripConfig& config) {
  if (config.replicas < 1) throw PreconditionError("need at least one replica");
  if (!(config.decay_gamma >= 0.0)) throw PreconditionError("decay rate must be non-negative");
  const ResonanceLine decay_line(line.e_r(), config.decay_gamma > 0.0 ? config.decay_gamma : line.gamma());
  const auto n = static_cast<std::size_t>(config.replicas);
  RoundTripSummary summary;
  summary.gamma.resize(n);
  summary.gamma_r.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const auto sample = generate_lineshape(line, config.energies, config.amplitude_scale, config.noise_sigma,
                                           derive_seed(config.seed, 2 * i));
    const auto counts = generate_decay_counts(decay_line, config.bin_edges, config.n_initial,
                                              derive_seed(config.seed, 2 * i + 1), config.poisson);
    summary.gamma[i] = fit_lineshape(sample).gamma;
    summary.gamma_r[i] = fit_decay_rate(counts).gamma_r;
  });

  const double count = static_cast<double>(n);
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) ratio_sum += summary.gamma[i] / summary.gamma_r[i];
  summary.mean_gamma = std::accumulate(summary.gamma.begin(), summary.gamma.end(), 0.0) / count;
  summary.mean_gamma_r = std::accumulate(summary.gamma_r.begin(), summary.gamma_r.end(), 0.0) / count;
  summary.mean_ratio = ratio_sum / count;
  if (n > 1) {
    double sg = 0.0;
    double sr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sg += (summary.gamma[i] - summary.mean_gamma) * (summary.gamma[i] - summary.mean_gamma);
      sr += (summary.gamma_r[i] - summary.mean_gamma_r) * (summary.gamma_r[i] - summary.mean_gamma_r);
    }
    summary.sd_gamma = std::sqrt(sg / (count - 1.0));
    summary.sd_gamma_r = std::sqrt(sr / (count - 1.0));
  }
  return summary;
}

void write_lineshape_csv(std::ostream& out, const LineshapeSample& sample) {
  out << "# noise_sigma=";
  write_number(out, sample.noise_sigma);
  out << " seed=" << sample.seed << '\n' << "E,sigma\n";
  for (std::size_t i = 0; i < sample.energies.size(); ++i) {
    write_number(out, sample.energies[i]);
    out << ',';
    write_number(out, sample.cross_sections[i]);
    out << '\n';
  }
}

LineshapeSample read_lineshape_csv(std::istream& in) {
  std::string comments;
  const auto rows = read_rows(in, 2, comments);
  LineshapeSample sample;
  for (const auto& row : rows) {
    sample.energies.push_back(row[0]);
    sample.cross_sections.push_back(row[1]);
  }
  return sample;
}

void write_decay_csv(std::ostream& out, const DecayCounts& counts) {
  out << "# n_initial=" << counts.n_initial << '\n' << "t_lo,t_hi,count\n";
  for (std::size_t i = 0; i < counts.counts.size(); ++i) {
    write_number(out, counts.bin_edges[i]);
    out << ',';
    write_number(out, counts.bin_edges[i + 1]);
    out << ',' << counts.counts[i] << '\n';
  }
}

DecayCounts read_decay_csv(std::istream& in) {
  std::string comments;
  const auto rows = read_rows(in, 3, comments);
  if (rows.empty()) throw PreconditionError("decay file has no bins");
  DecayCounts counts;
  counts.bin_edges.push_back(rows.front()[0]);
  std::uint64_t total = 0;
  for (const auto& row : rows) {
    if (row[0] != counts.bin_edges.back()) throw PreconditionError("decay bins must be contiguous");
    if (!(row[2] >= 0.0) || row[2] != std::floor(row[2])) throw PreconditionError("counts must be non-negative integers");
    counts.bin_edges.push_back(row[1]);
    counts.counts.push_back(static_cast<std::uint64_t>(row[2]));
    total += counts.counts.back();
  }
  counts.n_initial = total;
  const auto key = comments.find("n_initial=");
  if (key != std::string::npos) {
    const char* begin = comments.data() + key + 10;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(begin, comments.data() + comments.size(), value);
    if (ec == std::errc() && ptr != begin) counts.n_initial = value;
  }
  return counts;
}

}  // namespace gamow
