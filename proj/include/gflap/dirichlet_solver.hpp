#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gflap/lattice.hpp"
#include "gflap/report.hpp"
#include "gflap/young.hpp"

namespace gflap {

/// Bounded domain with a signed distance (positive inside).
struct Domain {
  enum class Kind { Interval, Ball, Rectangle };

  Kind kind = Kind::Interval;
  int dim = 1;
  Box box;                   // interval / rectangle
  Point center{0.0, 0.0};    // ball
  double radius = 1.0;       // ball

  static Domain interval(double a, double b);
  static Domain ball(int dim, Point center, double radius);
  static Domain rectangle(Box box);

  double signed_distance(const Point& x) const;
  Box bounding_box() const;
  double inradius() const;
  Json to_json() const;
};

Domain domain_from_json(const Json& j);

struct DirichletProblem {
  YoungFunction yf = YoungFunction::power(3.0);
  double s = 0.5;
  Domain domain;
  AnalyticFunction f;  // right-hand side, evaluated at nodes
  int mesh_n = 64;

  Grid grid() const;
  void validate() const;
};

enum class SolverMethod { LBFGS, Gradient };

struct SolverConfig {
  /// Stop when max_i |∂J/∂u_i| / h^n <= grad_tol.
  double grad_tol = 1e-8;
  int max_iters = 5000;
  double ls_shrink = 0.5;
  double ls_slope = 1e-4;
  SolverMethod method = SolverMethod::LBFGS;
  int lbfgs_memory = 12;
  /// Initial values on the grid (zero when unset); free nodes only are used.
  std::optional<std::vector<double>> init;

  void validate() const;
};

SolverConfig solver_config_from_json(const Json& j);
Json solver_config_to_json(const SolverConfig& cfg);

struct DiscreteSolution {
  LatticeFunction u;
  int iterations = 0;
  double final_grad_norm = 0.0;
  std::vector<double> energy_trace;
  bool converged = false;
  std::string message;

  Json run_record() const;
};

/// Problem data on the grid: free nodes (d > 0) and the load weights, i.e.
/// h^n times the fraction of each node's cell inside the domain.
struct Discretization {
  Grid grid;
  std::vector<std::size_t> free_nodes;
  std::vector<double> load;  // weight * f on free nodes

  static Discretization build(const DirichletProblem& prob);
};

/// Minimizes J(v) = modular(v) - Σ w_i f_i v_i over grid functions vanishing
/// at nodes outside the domain.
DiscreteSolution solve(const DirichletProblem& prob, const SolverConfig& cfg);

/// Solves both problems (which must share the mesh) and checks u1 <= u2 up
/// to 10 grad_tol (1 + sup|u2|).
Report check_comparison(const DirichletProblem& prob1,
                        const DirichletProblem& prob2, const SolverConfig& cfg);

/// Reports sup|u| and its change against a solve on a mesh with
/// round(2/3 mesh_n) nodes per axis (< 5% to pass).
Report check_linf_bound(const DirichletProblem& prob, const DiscreteSolution& sol,
                        const SolverConfig& cfg);

/// Compares the solution on B_R with that of the rescaled problem on B_1
/// (g_R(t) = g(R^{-s} t), right-hand side R^s f(R x)) at matching nodes.
Report check_scaling(const DirichletProblem& prob, double R,
                     const SolverConfig& cfg);

}  // namespace gflap
