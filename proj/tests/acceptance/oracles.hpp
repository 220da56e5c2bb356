#pragma once

#include <vector>

namespace gflap::oracle {

/// Fractional p-Laplacian torsion-type problem on (-1, 1) with a constant
/// right-hand side, discretized exactly as the library's nodal energy but
/// coded from its formula and minimized by damped Newton with a dense
/// Hessian. Returns the values at all `nodes` grid points (ends are 0).
struct NewtonResult {
  std::vector<double> u;
  int iterations = 0;
  double grad_norm = 0.0;  // max |dJ/du_i| / h
};

NewtonResult p_laplacian_newton_1d(double p, double s, double f, int nodes,
                                   double tol = 1e-13, int max_iters = 200);

/// Composite trapezoid of fn over [a, b] with n panels.
template <class F>
double trapezoid(F&& fn, double a, double b, int n) {
  const double h = (b - a) / n;
  double sum = 0.5 * (fn(a) + fn(b));
  for (int k = 1; k < n; ++k) sum += fn(a + k * h);
  return sum * h;
}

}  // namespace gflap::oracle
