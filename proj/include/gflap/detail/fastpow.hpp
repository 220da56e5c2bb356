#pragma once

#include <cmath>

namespace gflap::detail {

// |x|^e with exact multiplication for the small integer exponents that the
// power families produce (p = 3, 4 give e = 2, 3 for g and 3, 4 for G).
inline double pow_abs(double x, double e) {
  const double a = std::abs(x);
  if (e == 2.0) return a * a;
  if (e == 3.0) return a * a * a;
  if (e == 1.0) return a;
  if (e == 4.0) {
    const double a2 = a * a;
    return a2 * a2;
  }
  if (a == 0.0) return 0.0;
  return std::pow(a, e);
}

inline double signed_pow(double x, double e) {
  const double v = pow_abs(x, e);
  return x < 0.0 ? -v : v;
}

}  // namespace gflap::detail
