#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gflap/dirichlet_solver.hpp"
#include "gflap/errors.hpp"
#include "gflap/parallel.hpp"

using namespace gflap;

namespace {

AnalyticFunction constant(double v) {
  return {{{"id", "const"}, {"value", v}}, [v](const Point&) { return v; }};
}

DirichletProblem interval_problem(const YoungFunction& yf, double s, int mesh, double f) {
  DirichletProblem prob;
  prob.yf = yf;
  prob.s = s;
  prob.domain = Domain::interval(-1.0, 1.0);
  prob.f = constant(f);
  prob.mesh_n = mesh;
  return prob;
}

double value_at_zero(const DiscreteSolution& sol) {
  return sol.u.evaluate({0.0, 0.0});
}

}  // namespace

TEST_CASE("zero load gives the zero solution") {
  const DiscreteSolution sol =
      solve(interval_problem(YoungFunction::power(3.0), 0.5, 33, 0.0), SolverConfig{});
  CHECK(sol.converged);
  CHECK(sol.u.sup_abs() == 0.0);
}

TEST_CASE("linear case converges to the fractional torsion function") {
  // u = sin(pi s) / (2 pi) (1 - x^2)_+^s solves the quadratic problem with f = 1.
  const double s = 0.5;
  const double exact = std::sin(std::numbers::pi * s) / (2 * std::numbers::pi);
  double previous = 1.0;
  for (int mesh : {33, 65, 129}) {
    const DiscreteSolution sol =
        solve(interval_problem(YoungFunction::power(2.0, true), s, mesh, 1.0), SolverConfig{});
    REQUIRE(sol.converged);
    const double err = std::abs(value_at_zero(sol) / exact - 1.0);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 2e-2);
}

// Steps whose energy change is at roundoff level count as descent.
bool nonincreasing(const std::vector<double>& trace) {
  for (std::size_t k = 1; k < trace.size(); ++k)
    if (trace[k] > trace[k - 1] + 1e-12 * std::max(1.0, std::abs(trace[k - 1]))) return false;
  return true;
}

TEST_CASE("energy never increases along the iteration") {
  const DiscreteSolution sol = solve(
      interval_problem(YoungFunction::power_sum(3.0, 4.0, 1.0, 1.0), 0.3, 41, 1.0), SolverConfig{});
  REQUIRE(sol.converged);
  CHECK(nonincreasing(sol.energy_trace));
  SolverConfig gd;
  gd.method = SolverMethod::Gradient;
  gd.max_iters = 200;
  const DiscreteSolution slow = solve(
      interval_problem(YoungFunction::power_sum(3.0, 4.0, 1.0, 1.0), 0.3, 41, 1.0), gd);
  CHECK(nonincreasing(slow.energy_trace));
  CHECK(slow.energy_trace.back() < slow.energy_trace.front());
}

TEST_CASE("solutions are bit-identical across runs and thread counts") {
  DirichletProblem prob;
  prob.yf = YoungFunction::power(3.0);
  prob.s = 0.6;
  prob.domain = Domain::ball(2, {0.0, 0.0}, 1.0);
  prob.f = constant(1.0);
  prob.mesh_n = 17;
  set_num_threads(1);
  const DiscreteSolution a = solve(prob, SolverConfig{});
  const DiscreteSolution b = solve(prob, SolverConfig{});
  set_num_threads(3);
  const DiscreteSolution c = solve(prob, SolverConfig{});
  set_num_threads(1);
  CHECK(a.u.values() == b.u.values());
  CHECK(a.u.values() == c.u.values());
}

TEST_CASE("solutions are symmetric and positive for a positive load") {
  const DiscreteSolution sol =
      solve(interval_problem(YoungFunction::power(3.0), 0.5, 41, 1.0), SolverConfig{});
  REQUIRE(sol.converged);
  const auto& v = sol.u.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(v[i] == doctest::Approx(v[v.size() - 1 - i]).epsilon(1e-7).scale(1e-7));
    if (!sol.u.grid().on_boundary(i)) CHECK(v[i] > 0.0);
  }
}

TEST_CASE("comparison for ordered loads") {
  const YoungFunction yf = YoungFunction::power(3.0);
  const Report rep = check_comparison(interval_problem(yf, 0.4, 33, 1.0),
                                      interval_problem(yf, 0.4, 33, 2.0), SolverConfig{});
  CHECK_MESSAGE(rep.pass(), rep.to_json().dump());
}

TEST_CASE("domains") {
  const Domain ball = Domain::ball(2, {1.0, 0.0}, 2.0);
  CHECK(ball.signed_distance({1.0, 0.0}) == doctest::Approx(2.0));
  CHECK(ball.signed_distance({4.0, 0.0}) == doctest::Approx(-1.0));
  CHECK(ball.inradius() == doctest::Approx(2.0));
  const Domain iv = Domain::interval(0.0, 3.0);
  CHECK(iv.signed_distance({1.0, 0.0}) == doctest::Approx(1.0));
  const Domain back = domain_from_json(ball.to_json());
  CHECK(back.radius == 2.0);
  CHECK(back.center[0] == 1.0);
}

TEST_CASE("solver configuration") {
  SolverConfig cfg;
  cfg.grad_tol = 1e-6;
  cfg.method = SolverMethod::Gradient;
  const SolverConfig back = solver_config_from_json(solver_config_to_json(cfg));
  CHECK(back.grad_tol == 1e-6);
  CHECK(back.method == SolverMethod::Gradient);
  CHECK_THROWS_AS(solver_config_from_json({{"ls_shrink", 1.5}}), Error);
  DirichletProblem bad = interval_problem(YoungFunction::power(3.0), 1.2, 33, 1.0);
  CHECK_THROWS_AS(bad.validate(), Error);
}
