#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "gamow/error.hpp"
#include "gamow/rational.hpp"

using gamow::Complex;
using gamow::PoleSpec;
using gamow::RationalFunction;

namespace {

Complex random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  return {u(rng), u(rng)};
}

}  // namespace

TEST_CASE("from_factored matches direct evaluation of numerator over denominator") {
  const std::vector<Complex> numerator{{1.0, 0.5}, {-2.0, 0.0}, {0.25, 1.0}};
  const std::vector<Complex> poles{{1.0, -0.1}, {-0.5, 2.0}, {0.0, 1.0}};
  const std::vector<int> orders{2, 1, 3};
  std::vector<PoleSpec> spec;
  for (std::size_t k = 0; k < poles.size(); ++k) spec.push_back({poles[k], orders[k]});
  const auto f = RationalFunction::from_factored(numerator, spec);
  CHECK(f.denominator_degree() == 6);
  CHECK(f.decay_order() == 4);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Complex w = random_point(rng);
    const Complex expected = oracle::factored_value(numerator, poles, orders, w);
    CHECK(std::abs(f(w) - expected) <= 1e-11 * std::abs(expected));
  }
}

TEST_CASE("improper input keeps a polynomial part") {
  const std::vector<Complex> numerator{{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};  // omega^2
  const std::vector<PoleSpec> spec{{{0.0, 1.0}, 1}};
  const auto f = RationalFunction::from_factored(numerator, spec);
  CHECK_FALSE(f.polynomial().empty());
  CHECK(f.decay_order() == -1);
  const Complex w{0.7, -0.3};
  CHECK(std::abs(f(w) - w * w / (w - Complex{0.0, 1.0})) < 1e-13);
}

TEST_CASE("repeated pole positions merge into one higher-order term") {
  const std::vector<Complex> numerator{{1.0, 0.0}};
  const std::vector<PoleSpec> spec{{{1.0, 1.0}, 1}, {{1.0, 1.0}, 1}};
  const auto f = RationalFunction::from_factored(numerator, spec);
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms()[0].order() == 2);
}

TEST_CASE("evaluation at a pole throws") {
  const auto f = RationalFunction::simple_pole({1.0, -0.5}, 1.0);
  CHECK_THROWS_AS(f(Complex{1.0, -0.5}), gamow::PoleEvaluationError);
}

TEST_CASE("zero function and constants report their decay") {
  CHECK(RationalFunction().decay_order() == RationalFunction::kZeroDecay);
  CHECK(RationalFunction::constant(2.0).decay_order() == 0);
  CHECK(RationalFunction::simple_pole({0.0, 1.0}, 3.0).decay_order() == 1);
}

TEST_CASE("asymptotic coefficients match the large-omega behaviour") {
  const std::vector<Complex> numerator{{2.0, 0.0}, {1.0, 0.0}};
  const std::vector<PoleSpec> spec{{{0.5, -0.2}, 1}, {{-1.0, 1.0}, 2}};
  const auto f = RationalFunction::from_factored(numerator, spec);
  const auto a = f.asymptotic_coefficients(4);
  REQUIRE(a.size() == 4);
  CHECK(std::abs(a[0]) < 1e-14);
  CHECK(std::abs(a[1] - 1.0) < 1e-13);  // leading omega / omega^3
  const Complex w{1e3, 2e2};
  Complex series{0.0, 0.0};
  for (int k = 0; k < 4; ++k) series += a[k] / std::pow(w, k + 1);
  CHECK(std::abs(f(w) - series) < 1e-2 * std::pow(std::abs(w), -4));
}

TEST_CASE("algebra: times_omega, divided_by_linear, scaled, sum and difference") {
  const std::vector<Complex> numerator{{1.0, 0.0}};
  const std::vector<PoleSpec> spec{{{0.3, 1.2}, 2}, {{-0.4, 0.8}, 1}};
  const auto f = RationalFunction::from_factored(numerator, spec);
  const auto g = RationalFunction::simple_pole({1.0, -0.05}, {0.0, 1.0});
  const Complex z{1.0, -0.05};
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Complex w = random_point(rng);
    CHECK(std::abs(f.times_omega()(w) - w * f(w)) < 1e-12 * (1.0 + std::abs(w * f(w))));
    CHECK(std::abs(f.divided_by_linear(z)(w) - f(w) / (w - z)) < 1e-11 * (1.0 + std::abs(f(w) / (w - z))));
    CHECK(std::abs(f.scaled({0.0, 2.0})(w) - Complex{0.0, 2.0} * f(w)) < 1e-12 * (1.0 + std::abs(f(w))));
    CHECK(std::abs((f + g)(w) - (f(w) + g(w))) < 1e-12 * (1.0 + std::abs(f(w)) + std::abs(g(w))));
    CHECK(std::abs((f - g)(w) - (f(w) - g(w))) < 1e-12 * (1.0 + std::abs(f(w)) + std::abs(g(w))));
  }
  // Dividing at an existing pole raises its order.
  const auto raised = f.divided_by_linear({0.3, 1.2});
  const Complex w{0.9, -0.4};
  CHECK(std::abs(raised(w) - f(w) / (w - Complex{0.3, 1.2})) < 1e-12 * std::abs(raised(w)));
  CHECK(raised.denominator_degree() == f.denominator_degree() + 1);
}
