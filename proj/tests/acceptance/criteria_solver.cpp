#include <algorithm>
#include <cmath>
#include <random>

#include "criteria.hpp"
#include "gflap/orlicz_energy.hpp"
#include "oracles.hpp"
#include "tolerances.hpp"

namespace gflap::acceptance {

namespace {

// max |FD - gradient| / max |gradient| over interior nodes.
double gradient_fd_error(const YoungFunction& yf, const Grid& grid, double s,
                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  LatticeFunction u = LatticeFunction::zeros(grid);
  for (std::size_t i : interior_nodes(grid)) u.values()[i] = unit(rng);
  const LatticeFunction f =
      LatticeFunction::sample(grid, [](const Point& x) { return 1.0 + 0.5 * x[0] - x[1]; });
  const std::vector<double> grad = energy_gradient(yf, u, f, s);
  const auto nodes = interior_nodes(grid);
  const double delta = 1e-4;
  double err = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    LatticeFunction up = u, um = u;
    up.values()[nodes[k]] += delta;
    um.values()[nodes[k]] -= delta;
    const double fd =
        (dirichlet_energy(yf, up, f, s).total - dirichlet_energy(yf, um, f, s).total) /
        (2.0 * delta);
    err = std::max(err, std::abs(fd - grad[k]));
    scale = std::max(scale, std::abs(grad[k]));
  }
  return err / scale;
}

double sup_diff(const LatticeFunction& a, const LatticeFunction& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.grid().size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

CriterionResult c05_solver_oracles(const Options& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed + 5);

  double fd = 0.0;
  for (const auto& yf : {YoungFunction::power(3.0), YoungFunction::power_sum(3.0, 4.0, 1.0, 0.5)}) {
    fd = std::max(fd, gradient_fd_error(yf, Grid::interval(-1.0, 1.0, 33), 0.5, rng));
    fd = std::max(fd, gradient_fd_error(yf, Grid::square(-1.0, 1.0, 10), 0.3, rng));
  }

  DirichletProblem prob;
  prob.yf = YoungFunction::power(3.0);
  prob.s = 0.5;
  prob.domain = Domain::interval(-1.0, 1.0);
  prob.f = constant_rhs(1.0);
  prob.mesh_n = 128;
  SolverConfig cfg;
  const DiscreteSolution sol = solve(prob, cfg);
  const oracle::NewtonResult newton = oracle::p_laplacian_newton_1d(3.0, 0.5, 1.0, 128);
  double cross = 0.0;
  for (std::size_t i = 0; i < newton.u.size(); ++i)
    cross = std::max(cross, std::abs(sol.u[i] - newton.u[i]));

  SolverConfig cfg_rand = cfg;
  std::uniform_real_distribution<double> small(-0.05, 0.05);
  std::vector<double> init(sol.u.grid().size());
  for (double& v : init) v = small(rng);
  cfg_rand.init = init;
  const DiscreteSolution sol_rand = solve(prob, cfg_rand);
  const double uniq = sup_diff(sol.u, sol_rand.u);
  const double uniq_limit = tol::kUniquenessFactor * cfg.grad_tol;

  r.details = {{"gradient_fd_rel", fd},
               {"cross_implementation_sup", cross},
               {"newton_iterations", newton.iterations},
               {"newton_grad_norm", newton.grad_norm},
               {"solver", sol.run_record()},
               {"uniqueness_sup", uniq},
               {"uniqueness_limit", uniq_limit}};
  r.pass = fd <= tol::kGradientFd && cross <= tol::kCrossImpl && uniq <= uniq_limit &&
           sol.converged && sol_rand.converged;
  r.summary = "gradient vs FD rel " + num(fd) + " (limit 1e-5); vs Newton p-Laplacian " +
              num(cross) + " (limit 1e-6); two inits " + num(uniq) + " (limit " +
              num(uniq_limit) + ")";
  return r;
}

CriterionResult c06_comparison(const Options&) {
  CriterionResult r;
  r.pass = true;
  AnalyticFunction f2{{{"id", "one_plus_half_gaussian"}}, [](const Point& x) {
                        return 1.0 + 0.5 * std::exp(-(x[0] * x[0] + x[1] * x[1]));
                      }};
  double worst = -INFINITY, worst_tol = 0.0;
  int runs = 0;
  for (const Domain& dom : {Domain::interval(-1.0, 1.0), Domain::ball(2, {0.0, 0.0}, 1.0)})
    for (double p : {3.0, 4.0})
      for (double s : {0.3, 0.7}) {
        DirichletProblem a;
        a.yf = YoungFunction::power(p);
        a.s = s;
        a.domain = dom;
        a.f = constant_rhs(1.0);
        a.mesh_n = dom.dim == 1 ? 96 : 28;
        DirichletProblem b = a;
        b.f = f2;
        const Report rep = check_comparison(a, b, SolverConfig{});
        worst = std::max(worst, rep.extra["max_u1_minus_u2"].get<double>());
        worst_tol = std::max(worst_tol, rep.extra["tolerance"].get<double>());
        r.pass = r.pass && rep.pass();
        r.details["runs"].push_back(rep.to_json());
        ++runs;
      }
  r.summary = std::to_string(runs) + " ordered pairs (interval, ball; p 3, 4; s 0.3, 0.7), " +
              "largest max(u1 - u2) = " + num(worst) + " (tolerances <= " + num(worst_tol) + ")";
  return r;
}

CriterionResult c10_scaling(const Options&) {
  CriterionResult r;
  DirichletProblem prob;
  prob.yf = YoungFunction::power(3.0);
  prob.s = 0.5;
  prob.domain = Domain::ball(2, {0.0, 0.0}, 2.0);
  prob.f = constant_rhs(1.0);
  prob.mesh_n = 32;
  const Report rep = check_scaling(prob, 2.0, SolverConfig{});
  r.details = rep.to_json();
  r.pass = rep.pass();
  std::string parts;
  for (const auto& rec : rep.records)
    parts += (parts.empty() ? "" : "; ") + rec.name + " " +
             (rec.name == "solves_converged" ? std::string(rec.pass ? "yes" : "no")
                                             : num(rec.max_violation) + (rec.pass ? "" : " FAIL"));
  r.summary = "R = 2, 32^2 mesh: " + parts;
  return r;
}

}  // namespace gflap::acceptance
