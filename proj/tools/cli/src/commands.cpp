#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include "gamow/cli/app.hpp"
#include "gamow/cli/presets.hpp"
#include "gamow/dynamics.hpp"
#include "gamow/error.hpp"
#include "gamow/fitting.hpp"
#include "gamow/parallel.hpp"
#include "gamow/quadrature.hpp"
#include "gamow/relativistic.hpp"
#include "gamow/spectral.hpp"
#include "gamow/units.hpp"

namespace gamow::cli {

namespace {

using KeySet = std::set<std::string>;

const KeySet kCommonKeys{"tol", "seed", "format"};
const KeySet kLineKeys{"line.preset", "line.e_r", "line.gamma"};
const KeySet kTimeKeys{"grid.time.min", "grid.time.max", "grid.time.count", "grid.time.spacing", "grid.time.unit"};
const KeySet kPsiKeys{"psi.kind", "psi.bandwidth"};

bool contains(const KeySet& keys, const std::string& key) { return keys.count(key) != 0; }

std::string text(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

struct LineSetup {
  ResonanceLine line;
  std::optional<Preset> preset;
};

std::optional<Preset> read_preset(const Config& c) {
  const auto name = c.find("line.preset");
  if (!name) return std::nullopt;
  auto preset = find_preset(*name);
  if (!preset) throw ConfigError("unknown preset '" + *name + "'; choose sodium-3p, fe57 or pi0");
  return preset;
}

LineSetup read_line(const Config& c) {
  const auto preset = read_preset(c);
  if (!preset && !(c.has("line.e_r") && c.has("line.gamma")))
    throw ConfigError("set line.preset or both line.e_r and line.gamma (eV)");
  const double e_r = c.get_double("line.e_r", preset ? preset->e_r : 0.0);
  const double gamma = c.get_double("line.gamma", preset ? preset->gamma : 0.0);
  if (!(e_r > 0.0)) throw ConfigError("line.e_r must be positive");
  if (!(gamma > 0.0)) throw ConfigError("line.gamma must be positive");
  return LineSetup{ResonanceLine(e_r, gamma), preset};
}

SpectralSupport read_support(const Config& c) {
  const std::string s = c.get_string("support", "full");
  if (s == "full" || s == "full-line") return SpectralSupport::FullLine;
  if (s == "half" || s == "half-line") return SpectralSupport::HalfLine;
  throw ConfigError("support must be full or half, got '" + s + "'");
}

double read_tol(const Config& c) {
  const double tol = c.get_double("tol", kDefaultTolerance);
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  return tol;
}

TestFunction read_psi(const Config& c, const ResonanceLine& line, const std::string& fallback) {
  const std::string kind = c.get_string("psi.kind", fallback);
  if (kind == "none") {
    if (c.has("psi.bandwidth")) throw ConfigError("psi.bandwidth needs psi.kind = detector");
    return std::nullopt;
  }
  if (kind != "detector") throw ConfigError("psi.kind must be none or detector, got '" + kind + "'");
  const double bandwidth = c.get_double("psi.bandwidth", 10.0 * line.e_r());
  if (!(bandwidth > 0.0)) throw ConfigError("psi.bandwidth must be positive");
  return RationalHardyFunction::detector(bandwidth);
}

struct TimeGrid {
  std::vector<double> shown;    ///< in `unit`
  std::vector<double> natural;  ///< hbar / eV
  std::string unit;
  double to_natural = 1.0;
};

double natural_per_unit(const std::string& unit, const ResonanceLine& line, const std::string& key) {
  if (unit == "tau") return line.lifetime();
  if (unit == "natural") return 1.0;
  if (unit == "s") return 1.0 / units::kHbarEvS;
  throw ConfigError(key + " must be tau, natural or s, got '" + unit + "'");
}

TimeGrid read_time_grid(const Config& c, const ResonanceLine& line, double lo, double hi, long long n) {
  TimeGrid grid;
  grid.unit = c.get_string("grid.time.unit", "tau");
  grid.to_natural = natural_per_unit(grid.unit, line, "grid.time.unit");
  const double min = c.get_double("grid.time.min", lo);
  const double max = c.get_double("grid.time.max", hi);
  const long long count = c.get_int("grid.time.count", n);
  const std::string spacing = c.get_string("grid.time.spacing", "linear");
  if (count < 1 || count > 1'000'000) throw ConfigError("grid.time.count must be between 1 and 1000000");
  if (count > 1 && !(max > min)) throw ConfigError("grid.time.max must exceed grid.time.min");
  if (spacing == "linear") {
    for (long long i = 0; i < count; ++i)
      grid.shown.push_back(count == 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1));
  } else if (spacing == "log") {
    if (!(min > 0.0) || count < 2) throw ConfigError("log spacing needs 0 < grid.time.min and grid.time.count >= 2");
    const double step = std::log(max / min) / static_cast<double>(count - 1);
    for (long long i = 0; i < count; ++i) grid.shown.push_back(min * std::exp(step * static_cast<double>(i)));
    grid.shown.back() = max;
  } else {
    throw ConfigError("grid.time.spacing must be linear or log, got '" + spacing + "'");
  }
  for (double t : grid.shown) grid.natural.push_back(t * grid.to_natural);
  return grid;
}

void describe_line(Table& table, const LineSetup& setup, bool explain) {
  if (setup.preset) table.parameters.emplace_back("line.preset", std::string(setup.preset->name));
  table.parameters.emplace_back("line.e_r_ev", text(setup.line.e_r()));
  table.parameters.emplace_back("line.gamma_ev", text(setup.line.gamma()));
  if (explain && setup.preset) table.notes.push_back("preset " + std::string(setup.preset->name) + ": " +
                                                     std::string(setup.preset->source));
}

void describe_grid(Table& table, const TimeGrid& grid) {
  table.parameters.emplace_back("time_unit", grid.unit);
  table.parameters.emplace_back("natural_time_per_unit", text(grid.to_natural));
}

// Absolute error of |A|^2 given the error of A.
double probability_error(Complex a, double error) { return 2.0 * std::abs(a) * error + error * error; }

}  // namespace

Table cmd_survival(const Config& c, bool explain) {
  c.reject_unknown([](const std::string& k) {
    return contains(kCommonKeys, k) || contains(kLineKeys, k) || contains(kTimeKeys, k) || contains(kPsiKeys, k) ||
           k == "support" || k == "survival.amplitude";
  });
  const auto setup = read_line(c);
  const auto support = read_support(c);
  const double tol = read_tol(c);
  const std::string amplitude = c.get_string("survival.amplitude", "gamow");
  if (amplitude != "gamow" && amplitude != "density")
    throw ConfigError("survival.amplitude must be gamow or density, got '" + amplitude + "'");
  if (amplitude == "density" && c.has("psi.kind")) throw ConfigError("psi.* applies to the gamow amplitude only");
  const auto psi = read_psi(c, setup.line, "none");
  const auto grid = read_time_grid(c, setup.line, 0.0, 5.0, 51);

  Table table;
  table.command = "survival";
  describe_line(table, setup, explain);
  table.parameters.emplace_back("support", to_string(support));
  table.parameters.emplace_back("amplitude", amplitude);
  if (amplitude == "gamow") table.parameters.emplace_back("test_function", describe(psi));
  table.parameters.emplace_back("tol", text(tol));
  describe_grid(table, grid);
  if (explain) {
    table.notes.push_back(amplitude == "gamow"
                              ? "A(t) = (1/2pi) int psi(E) i/(E - z_R) e^{-iEt} dE; on the full line this is "
                                "theta(t) e^{-i z_R t} for psi = 1 and vanishes for t < 0"
                              : "A(t) = int rho(E) e^{-iEt} dE with the Lorentzian normalized on the support");
    table.notes.push_back("error_estimate bounds |A - A_exact|; 0 means the value came from exact residues");
  }

  const std::size_t n = grid.natural.size();
  std::vector<Complex> values(n);
  std::vector<double> errors(n);
  if (amplitude == "gamow") {
    const auto series = gamow_amplitude_series(setup.line, psi, grid.natural, support, tol);
    values = series.values;
    errors = series.errors;
  } else {
    parallel_for(n, [&](std::size_t i) {
      const auto a = survival_amplitude(setup.line, support, grid.natural[i], tol);
      values[i] = a.value;
      errors[i] = a.abs_error;
    });
  }

  table.columns = {"t", "re_A", "im_A", "abs2_A", "error_estimate"};
  for (std::size_t i = 0; i < n; ++i)
    table.rows.push_back({grid.shown[i], values[i].real(), values[i].imag(), std::norm(values[i]), errors[i]});
  return table;
}

Table cmd_norm(const Config& c, bool explain) {
  c.reject_unknown([](const std::string& k) {
    return contains(kCommonKeys, k) || contains(kLineKeys, k) || k == "norm.order" || k == "norm.series";
  });
  const auto setup = read_line(c);
  const double tol = read_tol(c);
  const bool series = c.get_bool("norm.series", true);
  const long long order = c.get_int("norm.order", 5);
  if (order < 0 || order > 10000) throw ConfigError("norm.order must be between 0 and 10000");

  Table table;
  table.command = "norm";
  describe_line(table, setup, explain);
  table.parameters.emplace_back("x", text(setup.line.gamma() / (2.0 * setup.line.e_r())));
  table.parameters.emplace_back("tol", text(tol));
  if (explain) {
    table.notes.push_back("half line: int_0^inf rho = 1/2 + arctan(2 E_R / Gamma) / pi; the series expands "
                          "arctan(1/x) in x = Gamma / (2 E_R) and needs x < 1");
    table.notes.push_back("deviation is measured from the exact value on the row's support: the closed form on "
                          "the half line, 1 on the full line");
  }
  table.columns = {"quantity", "order", "value", "deviation", "error_estimate"};

  const double closed = norm_truncated_closed_form(setup.line);
  std::vector<double> partial;
  if (series) {
    for (long long k = 0; k <= order; ++k) partial.push_back(norm_truncated_series(setup.line, static_cast<int>(k)));
  }
  const RationalFunction rho = bw_density_rational(setup.line);
  const auto half = fourier_halfline(rho, 0.0, tol);
  const double full_residue = (2.0 * kPi * residue_fourier(rho, 0.0).value).real();
  // fourier_fullline carries 1/2pi.
  const auto full = fourier_fullline(rho, 0.0, tol / (2.0 * kPi));

  table.rows.push_back({std::string("half_line_closed_form"), std::monostate{}, closed, 0.0, 0.0});
  for (std::size_t k = 0; k < partial.size(); ++k)
    table.rows.push_back({std::string("half_line_series"), static_cast<long long>(k), partial[k], partial[k] - closed,
                          std::monostate{}});
  table.rows.push_back({std::string("half_line_quadrature"), std::monostate{}, half.value.real(),
                        half.value.real() - closed, half.abs_error_estimate});
  table.rows.push_back({std::string("full_line_residue"), std::monostate{}, full_residue, full_residue - 1.0, 0.0});
  const double full_value = 2.0 * kPi * full.value.real();
  table.rows.push_back({std::string("full_line_quadrature"), std::monostate{}, full_value, full_value - 1.0,
                        2.0 * kPi * full.abs_error_estimate});
  return table;
}

namespace {

const KeySet kFitKeys{"fit.lifetime",       "fit.energy.count",  "fit.energy.halfwidth", "fit.noise",
                      "fit.bins",           "fit.window",        "fit.n_initial",        "fit.poisson",
                      "fit.agreement",      "fit.replicas",      "fit.lineshape.path",   "fit.decay.path",
                      "fit.export.lineshape", "fit.export.decay"};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open data file '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write data file '" + path + "'");
  return out;
}

DecayCounts scale_times(DecayCounts counts, double factor) {
  for (double& t : counts.bin_edges) t *= factor;
  return counts;
}

std::string ns(double seconds) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.3f ns", seconds / units::kNanosecond);
  return buffer;
}

}  // namespace

Table cmd_fit(const Config& c, bool explain) {
  c.reject_unknown([](const std::string& k) {
    return contains(kCommonKeys, k) || contains(kLineKeys, k) || contains(kFitKeys, k);
  });
  const auto setup = read_line(c);
  const ResonanceLine& line = setup.line;
  const std::uint64_t seed = c.get_uint("seed", 1);

  double gamma_r = line.gamma();
  if (c.has("fit.lifetime")) {
    const double tau = c.get_double("fit.lifetime", 0.0);
    if (!(tau > 0.0)) throw ConfigError("fit.lifetime must be positive (s)");
    gamma_r = units::width_from_lifetime(tau);
  } else if (setup.preset) {
    gamma_r = units::width_from_lifetime(setup.preset->tau_direct);
  }
  const long long energy_count = c.get_int("fit.energy.count", 201);
  const double halfwidth = c.get_double("fit.energy.halfwidth", 10.0);
  const double noise = c.get_double("fit.noise", 0.0);
  const long long bins = c.get_int("fit.bins", 20);
  const double window = c.get_double("fit.window", 5.0);
  const std::uint64_t n_initial = c.get_uint("fit.n_initial", 1'000'000);
  const bool poisson = c.get_bool("fit.poisson", false);
  const double agreement = c.get_double("fit.agreement", 0.1);
  const long long replicas = c.get_int("fit.replicas", 1);
  const auto lineshape_path = c.find("fit.lineshape.path");
  const auto decay_path = c.find("fit.decay.path");
  if (energy_count < 5 || energy_count > 1'000'000) throw ConfigError("fit.energy.count must be between 5 and 1000000");
  if (!(halfwidth > 0.0)) throw ConfigError("fit.energy.halfwidth must be positive");
  if (!(noise >= 0.0)) throw ConfigError("fit.noise must be non-negative");
  if (bins < 3 || bins > 1'000'000) throw ConfigError("fit.bins must be between 3 and 1000000");
  if (!(window > 0.0)) throw ConfigError("fit.window must be positive");
  if (n_initial == 0) throw ConfigError("fit.n_initial must be positive");
  if (!(agreement > 0.0)) throw ConfigError("fit.agreement must be positive");
  if (replicas < 1 || replicas > 100'000) throw ConfigError("fit.replicas must be between 1 and 100000");
  if (replicas > 1 && (lineshape_path || decay_path)) throw ConfigError("fit.replicas > 1 needs generated data");

  // Unit peak height, so fit.noise is relative to the peak.
  const double half_gamma = 0.5 * line.gamma();
  const double scale = half_gamma * half_gamma;
  std::vector<double> energies(static_cast<std::size_t>(energy_count));
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double u = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(energies.size() - 1);
    energies[i] = line.e_r() + halfwidth * line.gamma() * u;
  }
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = window * static_cast<double>(i) / (static_cast<double>(bins) * gamma_r);

  const ResonanceLine decay_line(line.e_r(), gamma_r);
  LineshapeSample sample;
  if (lineshape_path) {
    auto in = open_input(*lineshape_path);
    sample = read_lineshape_csv(in);
  } else {
    sample = generate_lineshape(line, energies, scale, noise, derive_seed(seed, 0));
  }
  DecayCounts counts;
  if (decay_path) {
    auto in = open_input(*decay_path);
    counts = scale_times(read_decay_csv(in), 1.0 / units::kHbarEvS);
  } else {
    counts = generate_decay_counts(decay_line, edges, n_initial, derive_seed(seed, 1), poisson);
  }
  if (const auto path = c.find("fit.export.lineshape")) {
    auto out = open_output(*path);
    write_lineshape_csv(out, sample);
  }
  if (const auto path = c.find("fit.export.decay")) {
    auto out = open_output(*path);
    write_decay_csv(out, scale_times(counts, units::kHbarEvS));
  }

  const auto shape = fit_lineshape(sample);
  const auto rate = fit_decay_rate(counts);
  const auto report = compare_width_lifetime(shape.gamma, rate.gamma_r, shape.gamma_error, rate.gamma_r_error);
  const bool pass = std::abs(report.ratio - 1.0) <= agreement;

  Table table;
  table.command = "fit";
  describe_line(table, setup, explain);
  table.parameters.emplace_back("gamma_r_ev", text(gamma_r));
  table.parameters.emplace_back("lineshape", lineshape_path ? *lineshape_path : "generated");
  table.parameters.emplace_back("decay", decay_path ? *decay_path : "generated");
  table.parameters.emplace_back("noise", text(noise));
  table.parameters.emplace_back("poisson", poisson ? "true" : "false");
  table.parameters.emplace_back("n_initial", std::to_string(n_initial));
  table.parameters.emplace_back("seed", std::to_string(seed));
  table.notes.push_back("tau = hbar/Gamma = " + ns(report.tau_from_width));
  table.notes.push_back("tau fitted from counts = " + ns(report.tau_fit));
  if (explain) {
    table.notes.push_back("Gamma from a Levenberg-Marquardt fit of the Lorentzian lineshape; Gamma_R from a "
                          "binned Poisson likelihood of the decay counts; agreement means |ratio - 1| <= " +
                          text(agreement));
    table.notes.push_back("decay data files give bin edges in seconds");
  }

  table.columns = {"quantity", "value", "uncertainty", "unit"};
  table.rows.push_back({std::string("gamma_fit"), report.gamma_fit, report.gamma_fit_error, std::string("eV")});
  table.rows.push_back({std::string("e_r_fit"), shape.e_r, shape.e_r_error, std::string("eV")});
  table.rows.push_back({std::string("gamma_r_fit"), report.gamma_r_fit, report.gamma_r_fit_error, std::string("eV")});
  table.rows.push_back({std::string("tau_from_width"), report.tau_from_width / units::kNanosecond,
                        report.tau_from_width_error / units::kNanosecond, std::string("ns")});
  table.rows.push_back({std::string("tau_fit"), report.tau_fit / units::kNanosecond,
                        report.tau_fit_error / units::kNanosecond, std::string("ns")});
  table.rows.push_back({std::string("ratio"), report.ratio, report.ratio_error, std::string("1")});
  table.rows.push_back({std::string("agreement"), std::string(pass ? "PASS" : "FAIL"), agreement, std::string("1")});

  if (replicas > 1) {
    RoundTripConfig mc;
    mc.energies = energies;
    mc.amplitude_scale = scale;
    mc.noise_sigma = noise;
    mc.bin_edges = edges;
    mc.n_initial = n_initial;
    mc.poisson = poisson;
    mc.replicas = static_cast<int>(replicas);
    mc.seed = seed;
    mc.decay_gamma = gamma_r;
    const auto summary = run_round_trip(line, mc);
    table.parameters.emplace_back("replicas", std::to_string(replicas));
    table.rows.push_back({std::string("mean_gamma_fit"), summary.mean_gamma, summary.sd_gamma, std::string("eV")});
    table.rows.push_back(
        {std::string("mean_gamma_r_fit"), summary.mean_gamma_r, summary.sd_gamma_r, std::string("eV")});
    table.rows.push_back({std::string("mean_ratio"), summary.mean_ratio, std::monostate{}, std::string("1")});
  }
  return table;
}

Table cmd_fermi(const Config& c, bool explain) {
  c.reject_unknown([](const std::string& k) {
    return contains(kCommonKeys, k) || contains(kLineKeys, k) || contains(kTimeKeys, k) || contains(kPsiKeys, k) ||
           k == "fermi.r" || k == "fermi.c";
  });
  const auto setup = read_line(c);
  const double tol = read_tol(c);
  const double r = c.get_double("fermi.r", 0.0);
  const double speed = c.get_double("fermi.c", 1.0);
  if (!(r >= 0.0)) throw ConfigError("fermi.r must be non-negative");
  if (!(speed > 0.0)) throw ConfigError("fermi.c must be positive");
  const auto psi = read_psi(c, setup.line, "detector");
  const auto grid = read_time_grid(c, setup.line, -2.0, 5.0, 71);
  // r and c are read so that r / c is a time in the grid unit.
  const double delay = r / speed;
  const double natural_r = delay * grid.to_natural;

  Table table;
  table.command = "fermi";
  describe_line(table, setup, explain);
  table.parameters.emplace_back("r", text(r));
  table.parameters.emplace_back("c", text(speed));
  table.parameters.emplace_back("r_over_c", text(delay));
  table.parameters.emplace_back("test_function", describe(psi));
  table.parameters.emplace_back("tol", text(tol));
  describe_grid(table, grid);
  if (explain) {
    table.notes.push_back("P_B(t) = |A(t - r/c)|^2 for an atom B at distance r excited by the decay products of A");
    table.notes.push_back("the full-line column vanishes before r/c; the half-line column does not");
  }

  const std::size_t n = grid.natural.size();
  std::vector<AmplitudeValue> full(n);
  std::vector<AmplitudeValue> half(n);
  parallel_for(n, [&](std::size_t i) {
    const double t = grid.natural[i] - natural_r;
    full[i] = gamow_amplitude(setup.line, psi, t, SpectralSupport::FullLine, tol);
    half[i] = gamow_amplitude(setup.line, psi, t, SpectralSupport::HalfLine, tol);
  });
  table.columns = {"t", "P_full", "error_full", "P_half", "error_half"};
  for (std::size_t i = 0; i < n; ++i) {
    table.rows.push_back({grid.shown[i], std::norm(full[i].value), probability_error(full[i].value, full[i].abs_error),
                          std::norm(half[i].value), probability_error(half[i].value, half[i].abs_error)});
  }
  return table;
}

namespace {

// "3/2", "-1/2", "1" or "0.5" as twice the value.
int read_twice(const std::string& value, const std::string& key) {
  const auto slash = value.find('/');
  if (slash != std::string::npos) {
    const long long num = parse_int(value.substr(0, slash), key);
    const long long den = parse_int(value.substr(slash + 1), key);
    if (den != 2 && den != 1) throw ConfigError(key + " must be an integer or half-integer");
    if (std::abs(num) > 1'000'000) throw ConfigError(key + " is out of range");
    return static_cast<int>(den == 2 ? num : 2 * num);
  }
  const double twice = 2.0 * parse_double(value, key);
  if (twice != std::round(twice) || std::abs(twice) > 2'000'000) throw ConfigError(key + " must be an integer or half-integer");
  return static_cast<int>(twice);
}

struct TransformEntry {
  long long id = 0;
  std::optional<std::vector<double>> boost;
  std::optional<std::vector<double>> rotation;
  std::optional<std::vector<double>> x;
};

std::vector<TransformEntry> read_transforms(const Config& c) {
  const std::string prefix = "rel.transform.";
  std::map<long long, TransformEntry> entries;
  for (const auto& [key, value] : c.values()) {
    if (key.rfind(prefix, 0) != 0) continue;
    const std::string rest = key.substr(prefix.size());
    const auto dot = rest.find('.');
    if (dot == std::string::npos) throw ConfigError("expected rel.transform.<n>.<boost|rotation|x>, got '" + key + "'");
    const long long id = parse_int(rest.substr(0, dot), key);
    if (id < 0) throw ConfigError("transform index must be non-negative in '" + key + "'");
    const std::string field = rest.substr(dot + 1);
    auto& entry = entries[id];
    entry.id = id;
    const auto list = parse_list(value, key);
    if (field == "boost") {
      if (list.size() != 3) throw ConfigError(key + " expects vx,vy,vz");
      entry.boost = list;
    } else if (field == "rotation") {
      if (list.size() != 4) throw ConfigError(key + " expects nx,ny,nz,angle");
      if (list[0] == 0.0 && list[1] == 0.0 && list[2] == 0.0) throw ConfigError(key + " has a zero axis");
      entry.rotation = list;
    } else if (field == "x") {
      if (list.size() != 4) throw ConfigError(key + " expects t,x,y,z");
      entry.x = list;
    } else {
      throw ConfigError("unknown transform field '" + field + "' in '" + key + "'");
    }
  }
  std::vector<TransformEntry> out;
  for (auto& [id, entry] : entries) out.push_back(entry);
  return out;
}

std::string components_text(const Eigen::VectorXcd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double im = v[i].imag();
    out += (i ? ";" : "") + format_real(v[i].real()) + (std::signbit(im) ? "-" : "+") + format_real(std::abs(im)) + "i";
  }
  return out;
}

}  // namespace

Table cmd_relativistic(const Config& c, bool explain) {
  c.reject_unknown([](const std::string& k) {
    return contains(kCommonKeys, k) || contains(kLineKeys, k) || k == "rel.j" || k == "rel.j3" || k == "rel.mass" ||
           k == "rel.width" || k == "rel.velocity" || k == "rel.x_unit" || k.rfind("rel.transform.", 0) == 0;
  });
  const auto entries = read_transforms(c);
  if (entries.empty()) throw ConfigError("no transformations given; set rel.transform.<n>.x, .boost or .rotation");
  std::optional<LineSetup> setup;
  if (!c.has("rel.mass") || !c.has("rel.width")) setup = read_line(c);
  const double mass = c.get_double("rel.mass", setup ? setup->line.e_r() : 0.0);
  const double width = c.get_double("rel.width", setup ? setup->line.gamma() : 0.0);
  if (!(mass > 0.0)) throw ConfigError("rel.mass must be positive");
  if (!(width >= 0.0)) throw ConfigError("rel.width must be non-negative");
  const int twice_j = read_twice(c.get_string("rel.j", "0"), "rel.j");
  if (twice_j < 0) throw ConfigError("rel.j must be non-negative");
  const Spin j(twice_j);
  const int twice_j3 = c.has("rel.j3") ? read_twice(*c.find("rel.j3"), "rel.j3") : j.twice_j();
  if (std::abs(twice_j3) > j.twice_j() || (j.twice_j() - twice_j3) % 2 != 0)
    throw ConfigError("rel.j3 must be one of -j, -j+1, ..., j");
  std::vector<double> velocity{0.0, 0.0, 0.0};
  if (c.has("rel.velocity")) velocity = c.get_list("rel.velocity");
  if (velocity.size() != 3) throw ConfigError("rel.velocity expects vx,vy,vz");
  const std::string x_unit = c.get_string("rel.x_unit", "natural");
  double x_scale = 1.0;
  if (x_unit == "tau") {
    if (!(width > 0.0)) throw ConfigError("rel.x_unit = tau needs a positive width");
    x_scale = 1.0 / width;
  } else if (x_unit != "natural") {
    throw ConfigError("rel.x_unit must be natural or tau, got '" + x_unit + "'");
  }

  const GamowLabel label(j, mass, width, Eigen::Vector3d(velocity[0], velocity[1], velocity[2]), twice_j3);
  std::vector<std::pair<LorentzTransform, FourVector>> transforms;
  for (const auto& entry : entries) {
    LorentzTransform lambda = LorentzTransform::identity();
    if (entry.rotation) {
      const auto& r = *entry.rotation;
      lambda = LorentzTransform::rotation(Eigen::Vector3d(r[0], r[1], r[2]), r[3]);
    }
    if (entry.boost) {
      const auto& b = *entry.boost;
      lambda = LorentzTransform::boost(Eigen::Vector3d(b[0], b[1], b[2])) * lambda;
    }
    FourVector x;
    if (entry.x) {
      const auto& v = *entry.x;
      x = FourVector{v[0] * x_scale, {v[1] * x_scale, v[2] * x_scale, v[3] * x_scale}};
    }
    transforms.emplace_back(lambda, x);
  }

  Table table;
  table.command = "relativistic";
  if (setup) describe_line(table, *setup, explain);
  table.parameters.emplace_back("j", to_string(j));
  table.parameters.emplace_back("twice_j3", std::to_string(twice_j3));
  table.parameters.emplace_back("mass", text(mass));
  table.parameters.emplace_back("width", text(width));
  table.parameters.emplace_back("velocity", text(velocity[0]) + "," + text(velocity[1]) + "," + text(velocity[2]));
  table.parameters.emplace_back("x_unit", x_unit);
  if (explain) {
    table.notes.push_back("each row applies Lambda = boost * rotation and the translation x to the label "
                          "[j, s_R] p_hat j3 with sqrt(s_R) = mass - i width / 2");
    table.notes.push_back("translations outside the forward light cone (t >= 0, t^2 >= |x|^2) are rejected");
    table.notes.push_back("components: column j3 of D^j of the Wigner rotation, rows in descending j3'");
  }

  table.columns = {"transform", "status", "re_phase", "im_phase", "abs2_phase", "p0", "p1", "p2", "p3", "components"};
  for (std::size_t i = 0; i < transforms.size(); ++i) {
    const auto outcome = transform_gamow(label, transforms[i].first, transforms[i].second);
    const long long id = entries[i].id;
    if (const auto* rejected = std::get_if<CausalityRejection>(&outcome)) {
      std::vector<Cell> row{id, std::string("REJECTED: outside forward cone (" + rejected->reason + ")")};
      row.resize(table.columns.size());
      table.rows.push_back(std::move(row));
      continue;
    }
    const auto& state = std::get<TransformedState>(outcome);
    table.rows.push_back({id, std::string("ok"), state.phase.real(), state.phase.imag(), std::norm(state.phase),
                          state.new_p_hat[0], state.new_p_hat[1], state.new_p_hat[2], state.new_p_hat[3],
                          components_text(state.components)});
  }
  return table;
}

Table run_command(const std::string& command, const Config& config, bool explain) {
  if (command == "survival") return cmd_survival(config, explain);
  if (command == "norm") return cmd_norm(config, explain);
  if (command == "fit") return cmd_fit(config, explain);
  if (command == "fermi") return cmd_fermi(config, explain);
  if (command == "relativistic") return cmd_relativistic(config, explain);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace gamow::cli
