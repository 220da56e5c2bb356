#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gflap/quadrature.hpp"

using namespace gflap;

TEST_CASE("adaptive integration of endpoint singularities") {
  CHECK(quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK(quad::integrate([](double x) { return std::log(x); }, 0.0, 1.0) ==
        doctest::Approx(-1.0).epsilon(1e-9));
  // Unbounded integrands are resolved only down to panels of width 2^-18.
  CHECK(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("infinite limits") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(quad::integrate([](double x) { return std::exp(-x); }, 0.0, inf) ==
        doctest::Approx(1.0).epsilon(1e-11));
  CHECK(quad::integrate([](double x) { return std::exp(-x * x); }, -inf, inf) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));
  CHECK(quad::integrate([](double x) { return 1.0 / (x * x); }, 2.0, inf) ==
        doctest::Approx(0.5).epsilon(1e-11));
}

TEST_CASE("reversed limits change the sign") {
  auto f = [](double x) { return std::cos(x); };
  CHECK(quad::integrate(f, 1.0, 0.0) == doctest::Approx(-std::sin(1.0)).epsilon(1e-13));
}

TEST_CASE("breakpoints resolve a kink") {
  auto f = [](double x) { return std::abs(x - 0.3); };
  const std::vector<double> br{0.3, 5.0, -2.0};
  const double exact = 0.5 * 0.3 * 0.3 + 0.5 * 0.7 * 0.7;
  CHECK(quad::integrate_split(f, 0.0, 1.0, br) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("Gauss-Legendre is exact for polynomials of degree 2m-1") {
  const auto& rule = quad::gauss_legendre(16);
  double sum = 0.0;
  for (double w : rule.weights) sum += w;
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  const double v = quad::composite_gauss([](double x) { return std::pow(x, 31); }, 0.0, 1.0, 1);
  CHECK(v == doctest::Approx(1.0 / 32.0).epsilon(1e-13));
}
