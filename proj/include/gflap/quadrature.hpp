#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace gflap::quad {

/// Globally adaptive Gauss-Kronrod (15/31) on [a, b], at most 400 panels.
/// Either limit may be infinite.
/// `abs_tol` is an absolute target; `rel_tol` a relative one (whichever is
/// looser wins, as in the usual adaptive rules).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12,
                 unsigned max_depth = 18);

/// Same as `integrate` but splits [a, b] at the interior breakpoints first.
/// Breakpoints outside (a, b) are ignored; order does not matter.
double integrate_split(const std::function<double(double)>& f, double a,
                       double b, std::span<const double> breakpoints,
                       double abs_tol = 1e-12, double rel_tol = 1e-12,
                       unsigned max_depth = 18);

/// Fixed Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
template <class F>
double composite_gauss(F&& f, double a, double b, int panels, int order = 16) {
  const GaussRule& rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * width;
    double part = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      part += rule.weights[q] * f(mid + 0.5 * width * rule.nodes[q]);
    total += 0.5 * width * part;
  }
  return total;
}

}  // namespace gflap::quad
