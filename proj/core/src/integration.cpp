#include "gamow/detail/integration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace gamow::detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Interval {
  double a;
  double b;
  PanelEstimate estimate;
};

struct ByError {
  bool operator()(const Interval& x, const Interval& y) const { return x.estimate.error < y.estimate.error; }
};

}  // namespace

PanelEstimate gauss_kronrod21(const RealToComplex& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<Complex, 21> values;
  values[20] = f(center);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    values[2 * j] = f(center - dx);
    values[2 * j + 1] = f(center + dx);
  }

  Complex kronrod = kWgk[10] * values[20];
  Complex gauss{0.0, 0.0};
  double abs_sum = kWgk[10] * std::abs(values[20]);
  for (int j = 0; j < 10; ++j) {
    const Complex pair = values[2 * j] + values[2 * j + 1];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(values[2 * j]) + std::abs(values[2 * j + 1]));
    // Odd Kronrod nodes (index 1, 3, ...) are the Gauss nodes.
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }

  const Complex mean = 0.5 * kronrod;
  double asc = kWgk[10] * std::abs(values[20] - mean);
  for (int j = 0; j < 10; ++j)
    asc += kWgk[j] * (std::abs(values[2 * j] - mean) + std::abs(values[2 * j + 1] - mean));

  const double scale = std::abs(half);
  PanelEstimate out;
  out.value = kronrod * half;
  out.abs_integral = abs_sum * scale;
  asc *= scale;
  double error = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && error != 0.0) error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  if (out.abs_integral > kTiny / (50.0 * kEps)) error = std::max(50.0 * kEps * out.abs_integral, error);
  out.error = error;
  return out;
}

AdaptiveResult integrate_adaptive(const RealToComplex& f, std::span<const double> breakpoints, double tol,
                                  int max_intervals) {
  std::priority_queue<Interval, std::vector<Interval>, ByError> queue;
  std::vector<Interval> settled;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) continue;
    Interval iv{a, b, gauss_kronrod21(f, a, b)};
    total_error += iv.estimate.error;
    queue.push(iv);
  }

  int count = static_cast<int>(queue.size());
  while (total_error > tol && count < max_intervals && !queue.empty()) {
    Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-13 * std::max(std::abs(worst.a), std::abs(worst.b))) {
      settled.push_back(worst);  // cannot be refined further in double precision
      continue;
    }
    Interval left{worst.a, mid, gauss_kronrod21(f, worst.a, mid)};
    Interval right{mid, worst.b, gauss_kronrod21(f, mid, worst.b)};
    total_error += left.estimate.error + right.estimate.error - worst.estimate.error;
    queue.push(left);
    queue.push(right);
    ++count;
  }

  while (!queue.empty()) {
    settled.push_back(queue.top());
    queue.pop();
  }
  std::sort(settled.begin(), settled.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });

  AdaptiveResult result;
  for (const auto& iv : settled) {
    result.value += iv.estimate.value;
    result.error += iv.estimate.error;
    result.abs_integral += iv.estimate.abs_integral;
  }
  result.intervals = static_cast<int>(settled.size());
  result.converged = result.error <= tol;
  return result;
}

std::optional<Complex> wynn_epsilon(std::span<const Complex> partial_sums) {
  constexpr std::size_t kWindow = 40;
  if (partial_sums.size() < 3) return std::nullopt;
  const auto sums = partial_sums.size() > kWindow ? partial_sums.last(kWindow) : partial_sums;

  std::vector<Complex> previous(sums.size() + 1, Complex{0.0, 0.0});  // column -1
  std::vector<Complex> current(sums.begin(), sums.end());              // column 0
  Complex best = current.back();
  for (int column = 0; current.size() >= 2; ++column) {
    std::vector<Complex> next(current.size() - 1);
    bool stalled = false;
    for (std::size_t i = 0; i + 1 < current.size(); ++i) {
      const Complex diff = current[i + 1] - current[i];
      if (std::abs(diff) <= 4.0 * kEps * std::abs(current[i + 1]) + kTiny) {
        stalled = true;
        break;
      }
      next[i] = previous[i + 1] + 1.0 / diff;
    }
    if (stalled) break;
    previous = std::move(current);
    current = std::move(next);
    // Columns with even index (2, 4, ...) hold the extrapolated limits.
    if ((column + 1) % 2 == 0) best = current.back();
  }
  return best;
}

TailResult oscillatory_tail(const RealToComplex& f, double start, int direction, double panel_length, double tol,
                            int max_panels) {
  TailResult result;
  std::vector<Complex> sums;
  std::vector<Complex> estimates;
  Complex running{0.0, 0.0};
  double panel_errors = 0.0;
  const double panel_tol = std::max(1e-3 * tol, 1e-18);
  double best_error = std::numeric_limits<double>::infinity();
  Complex best_value{0.0, 0.0};

  for (int k = 0; k < max_panels; ++k) {
    const double x0 = start + direction * k * panel_length;
    const double x1 = start + direction * (k + 1) * panel_length;
    const std::array<double, 2> ends = direction > 0 ? std::array<double, 2>{x0, x1} : std::array<double, 2>{x1, x0};
    const auto panel = integrate_adaptive(f, ends, panel_tol, 64);
    running += panel.value;
    panel_errors += panel.error;
    result.abs_integral += panel.abs_integral;
    sums.push_back(running);
    result.panels = k + 1;

    const auto extrapolated = wynn_epsilon(sums);
    if (!extrapolated) continue;
    estimates.push_back(*extrapolated);
    if (estimates.size() < 3) continue;
    const std::size_t n = estimates.size();
    const Complex e0 = estimates[n - 1];
    const double error = std::abs(e0 - estimates[n - 2]) + std::abs(e0 - estimates[n - 3]) +
                         8.0 * kEps * std::abs(e0) + panel_errors;
    if (error < best_error) {
      best_error = error;
      best_value = e0;
    }
    if (k >= 8 && error <= tol) {
      result.converged = true;
      break;
    }
  }
  result.value = best_value;
  result.error = best_error;
  return result;
}

AdaptiveResult algebraic_tail(const RealToComplex& f, double start, int direction, double tol, int max_intervals) {
  const double magnitude = std::abs(start);
  const double sign = direction > 0 ? 1.0 : -1.0;
  RealToComplex mapped = [&](double u) { return f(sign * magnitude / u) * (magnitude / (u * u)); };
  const std::array<double, 5> breaks = {0.0, 1e-3, 1e-2, 0.1, 1.0};
  return integrate_adaptive(mapped, breaks, tol, max_intervals);
}

}  // namespace gamow::detail
