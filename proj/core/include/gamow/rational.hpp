#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gamow/common.hpp"

namespace gamow {

/// All principal-part coefficients belonging to one pole:
/// coefficients[k] multiplies 1/(omega - pole)^(k+1).
struct PoleTerm {
  Complex pole;
  std::vector<Complex> coefficients;

  int order() const { return static_cast<int>(coefficients.size()); }
};

/// A pole position with its multiplicity, as used in factored denominators.
struct PoleSpec {
  Complex position;
  int order = 1;
};

/// Rational function of a complex energy, stored in partial-fraction form
///
///   f(omega) = P(omega) + sum_k sum_m c_{k,m} / (omega - beta_k)^m
///
/// where P is a polynomial (ascending coefficients; empty for strictly proper
/// functions). Partial-fraction storage makes residues, asymptotics and the
/// pole/background split direct reads instead of root-finding problems.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(std::vector<PoleTerm> terms, std::vector<Complex> polynomial = {});

  /// numerator(omega) / prod_k (omega - beta_k)^{m_k}; numerator coefficients
  /// are ascending. Repeated pole positions are merged into a higher order.
  static RationalFunction from_factored(std::span<const Complex> numerator,
                                        std::span<const PoleSpec> poles);

  static RationalFunction simple_pole(Complex pole, Complex coefficient);
  static RationalFunction constant(Complex value);

  Complex operator()(Complex omega) const;

  const std::vector<PoleTerm>& terms() const { return terms_; }
  const std::vector<Complex>& polynomial() const { return polynomial_; }

  /// Sum of pole orders, i.e. the degree of the reduced denominator.
  int denominator_degree() const;

  /// Largest p such that f(omega) = O(omega^-p) as |omega| -> infinity.
  /// Negative for polynomial growth; kZeroDecay for the zero function.
  int decay_order() const;
  static constexpr int kZeroDecay = 1 << 20;

  /// Coefficients a_1..a_count of the expansion f ~ sum_k a_k omega^-k, valid
  /// for strictly proper functions beyond the outermost pole.
  std::vector<Complex> asymptotic_coefficients(int count) const;

  /// omega * f(omega).
  RationalFunction times_omega() const;

  /// f(omega) / (omega - z).
  RationalFunction divided_by_linear(Complex z) const;

  RationalFunction scaled(Complex factor) const;

  RationalFunction operator+(const RationalFunction& other) const;
  RationalFunction operator-(const RationalFunction& other) const;

 private:
  void add_term(const PoleTerm& term);
  void trim();

  std::vector<PoleTerm> terms_;
  std::vector<Complex> polynomial_;
};

}  // namespace gamow
