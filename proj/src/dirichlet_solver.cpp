#include "gflap/dirichlet_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "gflap/discretization.hpp"
#include "gflap/errors.hpp"
#include "gflap/young.hpp"

namespace gflap {

Domain Domain::interval(double a, double b) {
  require(a < b, ErrorKind::Configuration, "interval needs a < b");
  Domain d;
  d.kind = Kind::Interval;
  d.dim = 1;
  d.box = Box{1, {a, 0.0}, {b, 0.0}};
  return d;
}

Domain Domain::ball(int dim, Point center, double radius) {
  require(dim == 1 || dim == 2, ErrorKind::Configuration, "ball dimension must be 1 or 2");
  require(radius > 0, ErrorKind::Configuration, "ball radius must be positive");
  Domain d;
  d.kind = Kind::Ball;
  d.dim = dim;
  d.center = center;
  if (dim == 1) d.center[1] = 0.0;
  d.radius = radius;
  return d;
}

Domain Domain::rectangle(Box box) {
  require(box.dim == 2 && box.extent(0) > 0 && box.extent(1) > 0,
          ErrorKind::Configuration, "rectangle must be a nondegenerate 2D box");
  Domain d;
  d.kind = Kind::Rectangle;
  d.dim = 2;
  d.box = box;
  return d;
}

double Domain::signed_distance(const Point& x) const {
  switch (kind) {
    case Kind::Ball:
      return radius - distance(x, center, dim);
    case Kind::Interval:
      return std::min(x[0] - box.lo[0], box.hi[0] - x[0]);
    case Kind::Rectangle: {
      const double dx = std::max(box.lo[0] - x[0], x[0] - box.hi[0]);
      const double dy = std::max(box.lo[1] - x[1], x[1] - box.hi[1]);
      if (dx <= 0 && dy <= 0) return -std::max(dx, dy);
      return -std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
    }
  }
  return 0.0;
}

Box Domain::bounding_box() const {
  if (kind != Kind::Ball) return box;
  Box b{dim, center, center};
  for (int a = 0; a < dim; ++a) {
    b.lo[a] -= radius;
    b.hi[a] += radius;
  }
  return b;
}

double Domain::inradius() const {
  if (kind == Kind::Ball) return radius;
  double r = 0.5 * box.extent(0);
  if (dim == 2) r = std::min(r, 0.5 * box.extent(1));
  return r;
}

Json Domain::to_json() const {
  switch (kind) {
    case Kind::Interval:
      return {{"kind", "interval"}, {"a", box.lo[0]}, {"b", box.hi[0]}};
    case Kind::Ball: {
      Json c = Json::array();
      for (int a = 0; a < dim; ++a) c.push_back(center[a]);
      return {{"kind", "ball"}, {"dim", dim}, {"center", c}, {"radius", radius}};
    }
    case Kind::Rectangle:
      return {{"kind", "rectangle"}, {"box", box_to_json(box)}};
  }
  return {};
}

Domain domain_from_json(const Json& j) {
  require(j.is_object() && j.contains("kind"), ErrorKind::Configuration,
          "domain needs a 'kind'");
  const std::string kind = j["kind"];
  if (kind == "interval")
    return Domain::interval(j.at("a").get<double>(), j.at("b").get<double>());
  if (kind == "ball") {
    const int dim = j.value("dim", 2);
    Point c{0.0, 0.0};
    if (j.contains("center"))
      for (int a = 0; a < dim && a < static_cast<int>(j["center"].size()); ++a)
        c[a] = j["center"][a].get<double>();
    return Domain::ball(dim, c, j.value("radius", 1.0));
  }
  if (kind == "rectangle") return Domain::rectangle(box_from_json(j.at("box")));
  fail(ErrorKind::Configuration, "unknown domain kind '" + kind + "'");
}

Grid DirichletProblem::grid() const {
  return Grid::covering(domain.bounding_box(), mesh_n);
}

void DirichletProblem::validate() const {
  require(s > 0.0 && s < 1.0, ErrorKind::Configuration, "s must lie in (0,1)");
  require(mesh_n >= 3, ErrorKind::Configuration, "mesh_n must be >= 3");
  require(static_cast<bool>(f.fn), ErrorKind::Configuration,
          "right-hand side is missing");
}

void SolverConfig::validate() const {
  require(grad_tol > 0, ErrorKind::Configuration, "grad_tol must be positive");
  require(max_iters >= 0, ErrorKind::Configuration, "max_iters must be >= 0");
  require(ls_shrink > 0 && ls_shrink < 1, ErrorKind::Configuration,
          "ls_shrink must lie in (0,1)");
  require(ls_slope > 0 && ls_slope < 1, ErrorKind::Configuration,
          "ls_slope must lie in (0,1)");
  require(lbfgs_memory >= 1, ErrorKind::Configuration,
          "lbfgs_memory must be positive");
}

SolverConfig solver_config_from_json(const Json& j) {
  SolverConfig cfg;
  if (j.is_null()) return cfg;
  require(j.is_object(), ErrorKind::Configuration, "solver must be an object");
  cfg.grad_tol = j.value("grad_tol", cfg.grad_tol);
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.ls_shrink = j.value("ls_shrink", cfg.ls_shrink);
  cfg.ls_slope = j.value("ls_slope", cfg.ls_slope);
  cfg.lbfgs_memory = j.value("lbfgs_memory", cfg.lbfgs_memory);
  if (j.contains("method")) {
    const std::string m = j["method"];
    if (m == "lbfgs")
      cfg.method = SolverMethod::LBFGS;
    else if (m == "gradient")
      cfg.method = SolverMethod::Gradient;
    else
      fail(ErrorKind::Configuration, "unknown solver method '" + m + "'");
  }
  if (j.contains("init") && j["init"].is_array())
    cfg.init = j["init"].get<std::vector<double>>();
  else if (j.contains("init") && j["init"] != "zero")
    fail(ErrorKind::Configuration, "solver.init must be \"zero\" or an array");
  cfg.validate();
  return cfg;
}

Json solver_config_to_json(const SolverConfig& cfg) {
  return {{"grad_tol", cfg.grad_tol},
          {"max_iters", cfg.max_iters},
          {"ls_shrink", cfg.ls_shrink},
          {"ls_slope", cfg.ls_slope},
          {"method", cfg.method == SolverMethod::LBFGS ? "lbfgs" : "gradient"},
          {"lbfgs_memory", cfg.lbfgs_memory},
          {"init", cfg.init ? "given" : "zero"}};
}

Json DiscreteSolution::run_record() const {
  return {{"iterations", iterations},
          {"final_grad_norm", final_grad_norm},
          {"converged", converged},
          {"message", message},
          {"energy_trace", energy_trace}};
}

Discretization Discretization::build(const DirichletProblem& prob) {
  prob.validate();
  Discretization d;
  d.grid = prob.grid();
  const Grid& g = d.grid;
  const int n = g.dim();
  const double h = g.h();
  const int sub = 8;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.node(i);
    const double dist = prob.domain.signed_distance(x);
    if (dist <= 0) continue;
    d.free_nodes.push_back(i);
    double frac = 1.0;
    if (dist < 0.5 * h * std::sqrt(static_cast<double>(n))) {
      // Cut cell: fraction of subsamples of the dual cell inside the domain.
      int inside = 0, total = 0;
      for (int a = 0; a < sub; ++a)
        for (int b = 0; b < (n == 2 ? sub : 1); ++b) {
          Point y = x;
          y[0] += ((a + 0.5) / sub - 0.5) * h;
          if (n == 2) y[1] += ((b + 0.5) / sub - 0.5) * h;
          inside += prob.domain.signed_distance(y) > 0;
          ++total;
        }
      frac = static_cast<double>(inside) / total;
    }
    d.load.push_back(g.cell_volume() * frac * prob.f.fn(x));
  }
  return d;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sup_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct Objective {
  const DiscreteModular& mod;
  const std::vector<double>& load;
  mutable int evaluations = 0;

  // Returns J and fills grad; also the modular part for roundoff scaling.
  double operator()(const std::vector<double>& x, std::vector<double>& grad,
                    double& modular_part) const {
    ++evaluations;
    modular_part = mod.value_and_gradient(x, grad);
    double lt = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      grad[i] -= load[i];
      lt += load[i] * x[i];
    }
    const double J = modular_part - lt;
    require(std::isfinite(J), ErrorKind::NumericalFailure,
            "energy evaluated to a non-finite value");
    return J;
  }
};

}  // namespace

DiscreteSolution solve(const DirichletProblem& prob, const SolverConfig& cfg) {
  cfg.validate();
  const Discretization disc = Discretization::build(prob);
  const Grid& grid = disc.grid;
  const std::size_t F = disc.free_nodes.size();
  const double hn = grid.cell_volume();

  DiscreteModular mod(prob.yf, grid, disc.free_nodes, prob.s);
  Objective J{mod, disc.load};

  std::vector<double> x(F, 0.0);
  if (cfg.init) {
    require(cfg.init->size() == grid.size(), ErrorKind::Configuration,
            "initial guess does not match the grid");
    x = mod.gather(*cfg.init);
  }

  DiscreteSolution sol;
  std::vector<double> g(F), g_new(F), x_new(F), d(F);
  double M = 0.0, M_new = 0.0;
  double E = J(x, g, M);
  sol.energy_trace.push_back(E);
  auto norm = [&](const std::vector<double>& gr) { return sup_abs(gr) / hn; };
  double gnorm = norm(g);

  std::deque<std::pair<std::vector<double>, std::vector<double>>> hist;
  double alpha_prev = 1.0;
  int it = 0;
  bool failed = false;
  const double eps_round = 64.0 * std::numeric_limits<double>::epsilon();

  while (gnorm > cfg.grad_tol && it < cfg.max_iters && F > 0) {
    bool quasi_newton = cfg.method == SolverMethod::LBFGS && !hist.empty();
    if (quasi_newton) {
      // Two-loop recursion.
      d = g;
      std::vector<double> a(hist.size());
      for (std::size_t k = hist.size(); k-- > 0;) {
        const auto& [sk, yk] = hist[k];
        a[k] = dot(sk, d) / dot(yk, sk);
        for (std::size_t i = 0; i < F; ++i) d[i] -= a[k] * yk[i];
      }
      const auto& [sl, yl] = hist.back();
      const double gamma = dot(sl, yl) / dot(yl, yl);
      for (double& v : d) v *= gamma;
      for (std::size_t k = 0; k < hist.size(); ++k) {
        const auto& [sk, yk] = hist[k];
        const double b = dot(yk, d) / dot(yk, sk);
        for (std::size_t i = 0; i < F; ++i) d[i] += (a[k] - b) * sk[i];
      }
      for (double& v : d) v = -v;
      if (!(dot(d, g) < 0)) {
        hist.clear();
        quasi_newton = false;
      }
    }
    double alpha;
    if (!quasi_newton) {
      for (std::size_t i = 0; i < F; ++i) d[i] = -g[i] / hn;
      if (cfg.method == SolverMethod::LBFGS || it == 0)
        alpha = 0.1 * (1.0 + sup_abs(x)) / sup_abs(d);
      else
        alpha = 2.0 * alpha_prev;
    } else {
      alpha = 1.0;
    }

    const double slope = dot(g, d);
    double E_new = E;
    bool accepted = false;
    for (int k = 0; k < 60 && !accepted; ++k) {
      for (std::size_t i = 0; i < F; ++i) x_new[i] = x[i] + alpha * d[i];
      E_new = J(x_new, g_new, M_new);
      if (E_new <= E + cfg.ls_slope * alpha * slope) {
        accepted = true;
      } else if (std::abs(E_new - E) <= eps_round * (M + std::abs(E)) &&
                 E_new <= E + eps_round * (M + std::abs(E)) && dot(g_new, d) <= 0) {
        // Energy differences are at roundoff level; along a convex line a
        // nonpositive slope at the trial point certifies descent.
        accepted = true;
      } else {
        alpha *= cfg.ls_shrink;
      }
    }
    if (!accepted) {
      if (quasi_newton) {
        hist.clear();
        continue;
      }
      failed = true;
      sol.message = "line search failed";
      break;
    }

    std::vector<double> sk(F), yk(F);
    for (std::size_t i = 0; i < F; ++i) {
      sk[i] = x_new[i] - x[i];
      yk[i] = g_new[i] - g[i];
    }
    if (cfg.method == SolverMethod::LBFGS && dot(sk, yk) > 1e-300) {
      hist.emplace_back(std::move(sk), std::move(yk));
      if (static_cast<int>(hist.size()) > cfg.lbfgs_memory) hist.pop_front();
    }
    alpha_prev = alpha;
    x.swap(x_new);
    g.swap(g_new);
    E = E_new;
    M = M_new;
    gnorm = norm(g);
    sol.energy_trace.push_back(E);
    ++it;
  }

  sol.iterations = it;
  sol.final_grad_norm = gnorm;
  sol.converged = !failed && gnorm <= cfg.grad_tol;
  if (sol.message.empty())
    sol.message = sol.converged ? "converged" : "max_iters reached";
  sol.u = LatticeFunction(grid, mod.scatter(x));
  return sol;
}

Report check_comparison(const DirichletProblem& prob1,
                        const DirichletProblem& prob2, const SolverConfig& cfg) {
  require(prob1.grid().same_as(prob2.grid()), ErrorKind::Configuration,
          "comparison needs both problems on the same mesh");
  const Grid grid = prob1.grid();
  double f_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.node(i);
    if (prob1.domain.signed_distance(x) <= 0) continue;
    f_gap = std::max(f_gap, prob1.f.fn(x) - prob2.f.fn(x));
  }
  require(f_gap <= 0, ErrorKind::Configuration,
          "comparison needs f1 <= f2 at every free node");

  const DiscreteSolution s1 = solve(prob1, cfg);
  const DiscreteSolution s2 = solve(prob2, cfg);
  double gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i)
    gap = std::max(gap, s1.u[i] - s2.u[i]);
  const double tol = 10.0 * cfg.grad_tol * (1.0 + s2.u.sup_abs());

  Report r;
  r.title = "comparison";
  r.records.push_back({"u1_le_u2", grid.size(), gap, gap <= tol,
                       "max(u1 - u2) against tolerance " + std::to_string(tol)});
  r.records.push_back({"solves_converged", 2, 0.0, s1.converged && s2.converged,
                       s1.message + "; " + s2.message});
  r.extra = {{"max_u1_minus_u2", gap},
             {"tolerance", tol},
             {"sup_u1", s1.u.sup_abs()},
             {"sup_u2", s2.u.sup_abs()},
             {"mesh_n", prob1.mesh_n}};
  return r;
}

Report check_linf_bound(const DirichletProblem& prob, const DiscreteSolution& sol,
                        const SolverConfig& cfg) {
  Report r;
  r.title = "linf_bound";
  const double fine = sol.u.sup_abs();
  r.records.push_back({"finite", 1, 0.0, std::isfinite(fine), ""});
  DirichletProblem coarse = prob;
  coarse.mesh_n = std::max(3, static_cast<int>(std::lround(prob.mesh_n * 2.0 / 3.0)));
  const DiscreteSolution sc = solve(coarse, cfg);
  const double other = sc.u.sup_abs();
  const double denom = std::max(fine, other);
  const double change = denom > 0 ? std::abs(fine - other) / denom : 0.0;
  r.records.push_back({"mesh_stability", 2, change - 0.05, change < 0.05,
                       "relative change of sup|u| between meshes"});
  r.extra = {{"sup_u", fine},
             {"sup_u_coarse", other},
             {"mesh_n", prob.mesh_n},
             {"mesh_n_coarse", coarse.mesh_n},
             {"relative_change", change}};
  return r;
}

Report check_scaling(const DirichletProblem& prob, double R,
                     const SolverConfig& cfg) {
  require(R > 0, ErrorKind::Domain, "scaling radius must be positive");
  const Domain& dom = prob.domain;
  require(dom.kind == Domain::Kind::Ball && std::abs(dom.radius - R) <= 1e-12 * R &&
              dom.center[0] == 0.0 && dom.center[1] == 0.0,
          ErrorKind::Configuration, "check_scaling needs the ball B_R at the origin");

  DirichletProblem unit = prob;
  unit.yf = prob.yf.rescaled(R, prob.s);
  unit.domain = Domain::ball(dom.dim, {0.0, 0.0}, 1.0);
  const double Rs = std::pow(R, prob.s);
  const ScalarField f = prob.f.fn;
  unit.f.fn = [f, R, Rs](const Point& x) { return Rs * f({R * x[0], R * x[1]}); };
  unit.f.descriptor = {{"id", "rescaled"}, {"base", prob.f.descriptor}, {"R", R}};

  const DiscreteSolution big = solve(prob, cfg);
  const DiscreteSolution small = solve(unit, cfg);
  const Grid& gb = big.u.grid();
  const Grid& gs = small.u.grid();
  require(gb.size() == gs.size(), ErrorKind::NumericalFailure,
          "scaled grids do not match");
  double disc = 0.0, jump = 0.0;
  for (std::size_t i = 0; i < gb.size(); ++i)
    disc = std::max(disc, std::abs(big.u[i] - small.u[i]));
  // Interpolation tolerance: largest change of u between neighbouring nodes.
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const auto c = gs.coords(i);
    if (c[0] + 1 < gs.nodes(0))
      jump = std::max(jump, std::abs(small.u[i] - small.u[gs.index(c[0] + 1, c[1])]));
    if (gs.dim() == 2 && c[1] + 1 < gs.nodes(1))
      jump = std::max(jump, std::abs(small.u[i] - small.u[gs.index(c[0], c[1] + 1)]));
  }
  const double tol = std::max(10.0 * cfg.grad_tol, 2.0 * jump);

  const auto [l0, L0] = std::pair{prob.yf.lambda(), prob.yf.Lambda()};
  const auto [lr, Lr] = estimate_ellipticity(unit.yf, 1e-6, 1e6, 2001);
  const double ell_gap = std::max(std::abs(lr - l0), std::abs(Lr - L0));

  Report r;
  r.title = "scaling";
  r.records.push_back({"discrepancy", gb.size(), disc, disc <= tol,
                       "sup |u(R x) - u_R(x)| over matching nodes"});
  r.records.push_back({"ellipticity_preserved", 2001, ell_gap, ell_gap <= 1e-8,
                       "estimate_ellipticity(g_R) against (lambda, Lambda) of g"});
  r.records.push_back({"solves_converged", 2, 0.0, big.converged && small.converged,
                       big.message + "; " + small.message});
  r.extra = {{"R", R},
             {"discrepancy", disc},
             {"tolerance", tol},
             {"interpolation_tolerance", jump},
             {"lambda_R", lr},
             {"Lambda_R", Lr}};
  return r;
}

}  // namespace gflap
