#pragma once

#include <functional>

namespace gflap::test {

/// Composite trapezoid rule with n panels.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int k = 1; k < n; ++k) sum += f(a + k * h);
  return sum * h;
}

}  // namespace gflap::test
