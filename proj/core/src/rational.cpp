#include "gamow/rational.hpp"

#include <algorithm>
#include <cmath>

#include "gamow/error.hpp"

namespace gamow {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

Complex horner(std::span<const Complex> ascending, Complex x) {
  Complex acc{0.0, 0.0};
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// First `count` Taylor coefficients of the polynomial around `center`.
std::vector<Complex> taylor_shift(std::span<const Complex> ascending, Complex center, int count) {
  std::vector<Complex> work(ascending.begin(), ascending.end());
  std::vector<Complex> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    if (work.empty()) {
      out.emplace_back(0.0, 0.0);
      continue;
    }
    // Synthetic division by (x - center): remainder is the k-th coefficient.
    Complex carry{0.0, 0.0};
    std::vector<Complex> quotient(work.size() > 1 ? work.size() - 1 : 0);
    for (std::size_t i = work.size(); i-- > 0;) {
      carry = carry * center + work[i];
      if (i > 0) quotient[i - 1] = carry;
    }
    out.push_back(carry);
    work = std::move(quotient);
  }
  return out;
}

std::vector<Complex> truncated_product(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                       int count) {
  std::vector<Complex> out(count, Complex{0.0, 0.0});
  for (int i = 0; i < count && i < static_cast<int>(a.size()); ++i) {
    for (int j = 0; i + j < count && j < static_cast<int>(b.size()); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

RationalFunction::RationalFunction(std::vector<PoleTerm> terms, std::vector<Complex> polynomial)
    : polynomial_(std::move(polynomial)) {
  for (const auto& term : terms) add_term(term);
  trim();
}

RationalFunction RationalFunction::simple_pole(Complex pole, Complex coefficient) {
  return RationalFunction({PoleTerm{pole, {coefficient}}});
}

RationalFunction RationalFunction::constant(Complex value) { return RationalFunction({}, {value}); }

RationalFunction RationalFunction::from_factored(std::span<const Complex> numerator,
                                                 std::span<const PoleSpec> poles) {
  std::vector<PoleSpec> merged;
  for (const auto& p : poles) {
    if (p.order < 1) throw PreconditionError("pole order must be a positive integer");
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const PoleSpec& q) { return q.position == p.position; });
    if (it == merged.end()) {
      merged.push_back(p);
    } else {
      it->order += p.order;
    }
  }

  std::vector<PoleTerm> terms;
  for (std::size_t k = 0; k < merged.size(); ++k) {
    const int m = merged[k].order;
    const Complex beta = merged[k].position;
    // h(omega) = numerator / prod_{l != k} (omega - beta_l)^{m_l}, expanded at beta.
    auto series = taylor_shift(numerator, beta, m);
    for (std::size_t l = 0; l < merged.size(); ++l) {
      if (l == k) continue;
      const Complex d = beta - merged[l].position;
      const int p = merged[l].order;
      std::vector<Complex> factor(m);
      Complex d_power = std::pow(d, -p);
      for (int r = 0; r < m; ++r) {
        factor[r] = (r % 2 == 0 ? 1.0 : -1.0) * binomial(p + r - 1, r) * d_power;
        d_power /= d;
      }
      series = truncated_product(series, factor, m);
    }
    PoleTerm term{beta, std::vector<Complex>(m)};
    for (int j = 1; j <= m; ++j) term.coefficients[j - 1] = series[m - j];
    terms.push_back(std::move(term));
  }

  // Polynomial part from long division by the expanded denominator.
  std::vector<Complex> denominator{Complex{1.0, 0.0}};
  for (const auto& p : merged) {
    for (int r = 0; r < p.order; ++r) {
      std::vector<Complex> next(denominator.size() + 1, Complex{0.0, 0.0});
      for (std::size_t i = 0; i < denominator.size(); ++i) {
        next[i + 1] += denominator[i];
        next[i] -= p.position * denominator[i];
      }
      denominator = std::move(next);
    }
  }
  std::vector<Complex> polynomial;
  std::vector<Complex> remainder(numerator.begin(), numerator.end());
  const std::size_t d = denominator.size() - 1;
  if (remainder.size() > d) {
    polynomial.assign(remainder.size() - d, Complex{0.0, 0.0});
    for (std::size_t i = remainder.size(); i-- > d;) {
      const Complex q = remainder[i];  // denominator is monic
      polynomial[i - d] = q;
      for (std::size_t j = 0; j <= d; ++j) remainder[i - d + j] -= q * denominator[j];
    }
  }
  return RationalFunction(std::move(terms), std::move(polynomial));
}

void RationalFunction::add_term(const PoleTerm& term) {
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [&](const PoleTerm& t) { return t.pole == term.pole; });
  if (it == terms_.end()) {
    terms_.push_back(term);
    return;
  }
  if (it->coefficients.size() < term.coefficients.size())
    it->coefficients.resize(term.coefficients.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < term.coefficients.size(); ++i) it->coefficients[i] += term.coefficients[i];
}

void RationalFunction::trim() {
  while (!polynomial_.empty() && polynomial_.back() == Complex{0.0, 0.0}) polynomial_.pop_back();
  for (auto& t : terms_) {
    while (!t.coefficients.empty() && t.coefficients.back() == Complex{0.0, 0.0}) t.coefficients.pop_back();
  }
  std::erase_if(terms_, [](const PoleTerm& t) { return t.coefficients.empty(); });
}

Complex RationalFunction::operator()(Complex omega) const {
  Complex value = horner(polynomial_, omega);
  for (const auto& t : terms_) {
    const Complex delta = omega - t.pole;
    if (delta == Complex{0.0, 0.0}) throw PoleEvaluationError("rational function evaluated at a pole");
    const Complex u = 1.0 / delta;
    Complex acc{0.0, 0.0};
    for (auto it = t.coefficients.rbegin(); it != t.coefficients.rend(); ++it) acc = (acc + *it) * u;
    value += acc;
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw PoleEvaluationError("rational function overflowed next to a pole");
  return value;
}

int RationalFunction::denominator_degree() const {
  int degree = 0;
  for (const auto& t : terms_) degree += t.order();
  return degree;
}

std::vector<Complex> RationalFunction::asymptotic_coefficients(int count) const {
  std::vector<Complex> a(count, Complex{0.0, 0.0});
  for (int k = 1; k <= count; ++k) {
    for (const auto& t : terms_) {
      for (int m = 1; m <= std::min(k, t.order()); ++m)
        a[k - 1] += t.coefficients[m - 1] * binomial(k - 1, m - 1) * std::pow(t.pole, k - m);
    }
  }
  return a;
}

int RationalFunction::decay_order() const {
  if (!polynomial_.empty()) return -static_cast<int>(polynomial_.size() - 1);
  const int degree = denominator_degree();
  if (degree == 0) return kZeroDecay;
  const auto a = asymptotic_coefficients(degree);
  for (int k = 1; k <= degree; ++k) {
    double scale = 0.0;
    for (const auto& t : terms_) {
      for (int m = 1; m <= std::min(k, t.order()); ++m)
        scale += std::abs(t.coefficients[m - 1]) * binomial(k - 1, m - 1) * std::pow(std::abs(t.pole), k - m);
    }
    if (std::abs(a[k - 1]) > 1e-11 * scale) return k;
  }
  return kZeroDecay;
}

RationalFunction RationalFunction::times_omega() const {
  std::vector<Complex> polynomial(polynomial_.size() + 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < polynomial_.size(); ++i) polynomial[i + 1] = polynomial_[i];
  std::vector<PoleTerm> terms;
  for (const auto& t : terms_) {
    const auto& c = t.coefficients;
    if (!c.empty()) polynomial[0] += c[0];
    PoleTerm shifted{t.pole, std::vector<Complex>(c.size())};
    for (std::size_t j = 0; j < c.size(); ++j)
      shifted.coefficients[j] = t.pole * c[j] + (j + 1 < c.size() ? c[j + 1] : Complex{0.0, 0.0});
    terms.push_back(std::move(shifted));
  }
  return RationalFunction(std::move(terms), std::move(polynomial));
}

RationalFunction RationalFunction::divided_by_linear(Complex z) const {
  std::vector<PoleTerm> terms;
  Complex at_z{0.0, 0.0};
  for (const auto& t : terms_) {
    if (t.pole == z) {
      PoleTerm raised{z, std::vector<Complex>(t.coefficients.size() + 1, Complex{0.0, 0.0})};
      for (std::size_t j = 0; j < t.coefficients.size(); ++j) raised.coefficients[j + 1] = t.coefficients[j];
      terms.push_back(std::move(raised));
      continue;
    }
    const Complex d = z - t.pole;
    PoleTerm reduced{t.pole, std::vector<Complex>(t.coefficients.size(), Complex{0.0, 0.0})};
    for (int m = 1; m <= t.order(); ++m) {
      const Complex c = t.coefficients[m - 1];
      at_z += c * std::pow(d, -m);
      for (int j = 1; j <= m; ++j) reduced.coefficients[j - 1] -= c * std::pow(d, -(m - j + 1));
    }
    terms.push_back(std::move(reduced));
  }
  std::vector<Complex> quotient;
  if (!polynomial_.empty()) {
    quotient.assign(polynomial_.size() - 1, Complex{0.0, 0.0});
    Complex carry{0.0, 0.0};
    for (std::size_t i = polynomial_.size(); i-- > 0;) {
      carry = carry * z + polynomial_[i];
      if (i > 0) quotient[i - 1] = carry;
    }
    at_z += carry;
  }
  terms.push_back(PoleTerm{z, {at_z}});
  return RationalFunction(std::move(terms), std::move(quotient));
}

RationalFunction RationalFunction::scaled(Complex factor) const {
  auto terms = terms_;
  for (auto& t : terms)
    for (auto& c : t.coefficients) c *= factor;
  auto polynomial = polynomial_;
  for (auto& c : polynomial) c *= factor;
  return RationalFunction(std::move(terms), std::move(polynomial));
}

RationalFunction RationalFunction::operator+(const RationalFunction& other) const {
  auto terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  std::vector<Complex> polynomial(std::max(polynomial_.size(), other.polynomial_.size()), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < polynomial_.size(); ++i) polynomial[i] += polynomial_[i];
  for (std::size_t i = 0; i < other.polynomial_.size(); ++i) polynomial[i] += other.polynomial_[i];
  return RationalFunction(std::move(terms), std::move(polynomial));
}

RationalFunction RationalFunction::operator-(const RationalFunction& other) const {
  return *this + other.scaled(-1.0);
}

}  // namespace gamow
