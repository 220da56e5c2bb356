#include <cmath>

#include "doctest.h"
#include "gflap/errors.hpp"
#include "gflap/young.hpp"
#include "support.hpp"

using namespace gflap;

TEST_CASE("power family matches its closed forms") {
  const YoungFunction yf = YoungFunction::power(3.0);
  CHECK(yf.g(2.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(yf.g(-2.0) == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(yf.G(2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(yf.G(-2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(yf.g_prime(2.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(yf.lambda() == 2.0);
  CHECK(yf.Lambda() == 2.0);
  for (double w : {0.1, 1.0, 7.5})
    CHECK(yf.conjugate(w) == doctest::Approx(2.0 / 3.0 * std::pow(w, 1.5)).epsilon(1e-10));
  // Phi(T) = T^p / p^2 for G = t^p / p.
  CHECK(yf.log_moment(1.7) == doctest::Approx(std::pow(1.7, 3.0) / 9.0).epsilon(1e-10));
}

TEST_CASE("power_sum G is the integral of g") {
  const YoungFunction yf = YoungFunction::power_sum(3.0, 4.5, 1.0, 0.5);
  for (double t : {0.3, 1.0, 2.2}) {
    const double oracle = test::trapezoid([&](double x) { return yf.g(x); }, 0.0, t, 20000);
    CHECK(yf.G(t) == doctest::Approx(oracle).epsilon(1e-7));
    const double dg = (yf.g(t + 1e-6) - yf.g(t - 1e-6)) / 2e-6;
    CHECK(yf.g_prime(t) == doctest::Approx(dg).epsilon(1e-7));
  }
  CHECK(yf.p_minus() == doctest::Approx(3.0));
  CHECK(yf.p_plus() == doctest::Approx(4.5));
}

TEST_CASE("g_inverse inverts g") {
  const YoungFunction yf = YoungFunction::power_sum(3.0, 4.0, 1.0, 0.5);
  for (double t : {1e-3, 0.5, 3.0, 40.0})
    CHECK(yf.g_inverse(yf.g(t)) == doctest::Approx(t).epsilon(1e-12));
}

TEST_CASE("rescaling composes g with R^{-s} and keeps the ellipticity") {
  const YoungFunction yf = YoungFunction::power_sum(3.0, 4.0, 1.0, 2.0);
  const YoungFunction gr = yf.rescaled(2.0, 0.4);
  const double c = std::pow(2.0, -0.4);
  for (double t : {0.2, 1.3, 5.0}) CHECK(gr.g(t) == doctest::Approx(yf.g(c * t)).epsilon(1e-13));
  const auto [lo, hi] = estimate_ellipticity(gr, 1e-4, 1e4, 400);
  CHECK(lo >= yf.lambda() - 1e-10);
  CHECK(hi <= yf.Lambda() + 1e-10);
}

TEST_CASE("estimate_ellipticity of a pure power is flat") {
  const auto [lo, hi] = estimate_ellipticity(YoungFunction::power(3.5), 1e-3, 1e3, 100);
  CHECK(lo == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(hi == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("inequality suite passes for admissible families") {
  for (const YoungFunction& yf :
       {YoungFunction::power(3.0), YoungFunction::power_sum(3.0, 5.0, 1.0, 0.2)}) {
    const Report rep = check_inequality_suite(yf, 2000, 7);
    CHECK_MESSAGE(rep.pass(), rep.to_json().dump());
  }
}

TEST_CASE("inequality suite rejects the nonconvex test hook") {
  const Json j = {{"family", "test_nonconvex"}, {"test_hook", true}};
  const Report rep = check_inequality_suite(young_from_json(j), 2000, 7);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("inequality suite is reproducible for a fixed seed") {
  const YoungFunction yf = YoungFunction::power_sum(3.0, 4.0, 1.0, 1.0);
  CHECK(check_inequality_suite(yf, 500, 11).to_json() ==
        check_inequality_suite(yf, 500, 11).to_json());
}

TEST_CASE("conjugate sweep holds with zero gap at w = g(t)") {
  const Report rep = check_conjugate_sweep(YoungFunction::power_sum(3.0, 4.0, 1.0, 1.0), 60);
  CHECK(rep.pass());
}

TEST_CASE("configuration of Young functions") {
  CHECK_THROWS_AS(young_from_json({{"family", "power"}, {"params", {{"p", 2.0}}}}), Error);
  CHECK_THROWS_AS(young_from_json({{"family", "test_nonconvex"}}), Error);
  CHECK_THROWS_AS(young_from_json({{"family", "nope"}}), Error);
  const YoungFunction yf = YoungFunction::power_sum(3.0, 4.0, 1.0, 0.5);
  const YoungFunction back = young_from_json(young_to_json(yf));
  CHECK(back.g(1.7) == yf.g(1.7));
  CHECK(YoungFunction::power(2.0, true).p_minus() == doctest::Approx(2.0));
}
