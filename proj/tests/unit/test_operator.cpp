#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gflap/errors.hpp"
#include "gflap/nonlocal_operator.hpp"
#include "support.hpp"

using namespace gflap;

namespace {

// A (1 - x^2)_+^s with A = sin(pi s) / (2 pi) satisfies
// 2 PV ∫ (u(x) - u(y)) |x-y|^{-1-2s} dy = 1 on (-1, 1).
Field fractional_torsion(double s) {
  const double A = std::sin(std::numbers::pi * s) / (2.0 * std::numbers::pi);
  return analytic_field(
      1, [=](const Point& x) { return A * std::pow(std::max(1.0 - x[0] * x[0], 0.0), s); },
      {-1.0, 1.0}, Box{1, {-1.0, 0.0}, {1.0, 0.0}});
}

Field gaussian(double center, double width) {
  return analytic_field(1, [=](const Point& x) {
    const double z = (x[0] - center) / width;
    return std::exp(-0.5 * z * z);
  });
}

// 2 ∫_{|z|>eps} g((u(x) - u(x+z)) / |z|^s) |z|^{-1-s} dz by the trapezoid
// rule in log|z| on [eps, L]; u is negligible beyond L.
double truncated_oracle(const YoungFunction& yf, const Field& u, double x, double s,
                        double eps, double L) {
  const double ux = u.value({x, 0.0});
  auto side = [&](double sign) {
    return test::trapezoid(
        [&](double t) {
          const double z = std::exp(t);
          const double d = (ux - u.value({x + sign * z, 0.0})) / std::pow(z, s);
          return yf.g(d) * std::pow(z, -s);
        },
        std::log(eps), std::log(L), 200000);
  };
  // Beyond L only u(x) survives: ∫_L^∞ g(u(x) z^{-s}) z^{-1-s} dz, closed
  // form for a pure power.
  const double p = yf.p_minus();
  const double far = std::pow(std::abs(ux), p - 1) * std::pow(L, -s * p) / (s * p);
  return 2.0 * (side(1.0) + side(-1.0) + 2.0 * std::copysign(far, ux));
}

}  // namespace

TEST_CASE("linear case reproduces the fractional torsion function") {
  const YoungFunction yf = YoungFunction::power(2.0, true);
  for (double s : {0.3, 0.5, 0.7}) {
    const Field u = fractional_torsion(s);
    for (double x : {0.0, 0.4, -0.75}) {
      const PointwiseResult r = pointwise_apply(yf, u, {x, 0.0}, s);
      CHECK_MESSAGE(r.extrapolated == doctest::Approx(1.0).epsilon(2e-4),
                    "s=" << s << " x=" << x << " value " << r.extrapolated);
    }
  }
}

TEST_CASE("truncated values agree with a direct trapezoid oracle") {
  const YoungFunction yf = YoungFunction::power(3.0);
  const Field u = gaussian(0.1, 0.3);
  const double s = 0.5;
  QuadratureSpec q;
  q.eps_schedule = {0.25, 0.125, 0.0625};
  const PointwiseResult r = pointwise_apply(yf, u, {0.35, 0.0}, s, q);
  const double oracle = truncated_oracle(yf, u, 0.35, s, 0.0625, 8.0);
  CHECK(r.values.back() == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("translation and reflection invariance") {
  const YoungFunction yf = YoungFunction::power_sum(3.0, 4.0, 1.0, 0.5);
  const double s = 0.4;
  const double a = pointwise_apply(yf, gaussian(0.0, 0.3), {0.2, 0.0}, s).extrapolated;
  const double b = pointwise_apply(yf, gaussian(1.5, 0.3), {1.7, 0.0}, s).extrapolated;
  const double c = pointwise_apply(yf, gaussian(0.0, 0.3), {-0.2, 0.0}, s).extrapolated;
  CHECK(b == doctest::Approx(a).epsilon(1e-8));
  CHECK(c == doctest::Approx(a).epsilon(1e-8));
}

TEST_CASE("odd symmetry under u -> -u") {
  const YoungFunction yf = YoungFunction::power(3.0);
  const Field u = gaussian(0.0, 0.3);
  Field v = u;
  v.value = [&](const Point& x) { return -u.value(x); };
  const double a = pointwise_apply(yf, u, {0.3, 0.0}, 0.6).extrapolated;
  const double b = pointwise_apply(yf, v, {0.3, 0.0}, 0.6).extrapolated;
  CHECK(b == doctest::Approx(-a).epsilon(1e-12));
}

TEST_CASE("one-sided profile integral has a closed form") {
  for (const YoungFunction& yf :
       {YoungFunction::power(3.0), YoungFunction::power_sum(3.0, 4.0, 1.0, 2.0)}) {
    for (double s : {0.2, 0.5, 0.8}) {
      const double x = 0.7;
      const double closed = profile_I1(yf, s, x);
      CHECK(closed == doctest::Approx(std::pow(x, -s) * yf.G(1.0) / s).epsilon(1e-14));
      CHECK(profile_I1_numeric(yf, s, x) == doctest::Approx(closed).epsilon(1e-8));
      // w = x - y, then w = x e^t.
      const double oracle = test::trapezoid(
          [&](double t) {
            const double w = x * std::exp(t);
            return yf.g(std::pow(x / w, s)) * std::pow(w, -s);
          },
          0.0, 60.0 / s, 400000);
      CHECK(oracle == doctest::Approx(closed).epsilon(1e-6));
    }
  }
}

TEST_CASE("profile truncated integral stays within its bound") {
  const YoungFunction yf = YoungFunction::power(3.0);
  for (double eps : {0.1, 0.01, 0.001}) {
    const double v = profile_truncated_integral(yf, 0.5, 0.5, eps);
    CHECK(std::abs(v) <= profile_residual_bound(yf, 0.5, 0.5, eps));
  }
}

TEST_CASE("Lieberman constant for a cubic example") {
  // (2/0.5) g(2) + (2/(2*0.5)) g'(2) * 1 = 16 + 8 for g(t) = t^2.
  CHECK(lieberman_bound(YoungFunction::power(3.0), 1.0, 1.0, 1.0, 1, 0.5) ==
        doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("sphere areas") {
  CHECK(unit_sphere_area(1) == 2.0);
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("exterior correction in the linear case") {
  const YoungFunction yf = YoungFunction::power(2.0, true);
  const double s = 0.5;
  const Field u = gaussian(0.0, 0.3);
  const Grid grid = Grid::interval(1.0, 2.0, 129);
  const LatticeFunction v = LatticeFunction::sample(
      grid, [](const Point& y) { return std::sin(std::numbers::pi * (y[0] - 1.0)); });
  const double x = 0.2;
  // With g linear, h(x) = -2 ∫ v(y) |x-y|^{-1-2s} dy.
  const double oracle = -2.0 * test::trapezoid(
                                   [&](double y) {
                                     return v.evaluate({y, 0.0}) * std::pow(y - x, -1.0 - 2 * s);
                                   },
                                   1.0, 2.0, 20000);
  CHECK(exterior_correction(yf, u, v, {x, 0.0}, s) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("s-Holder quotient of a linear function") {
  const Grid grid = Grid::interval(0.0, 1.0, 11);
  const LatticeFunction u = LatticeFunction::sample(grid, [](const Point& x) { return 3 * x[0]; });
  CHECK(s_holder_quotient(u, {0.2, 0.0}, {0.6, 0.0}, 0.5) ==
        doctest::Approx(-1.2 / std::sqrt(0.4)).epsilon(1e-12));
}

TEST_CASE("quadrature specification is validated") {
  QuadratureSpec q;
  q.eps_schedule = {0.1, 0.2};
  CHECK_THROWS_AS(q.validate(), Error);
  const QuadratureSpec back = quadrature_from_json(quadrature_to_json(QuadratureSpec{}));
  CHECK(back.eps_schedule == QuadratureSpec{}.eps_schedule);
}
