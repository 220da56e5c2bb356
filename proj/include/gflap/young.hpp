#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gflap/report.hpp"

namespace gflap {

/// One term a*|t|^e*sign(t) of a power-series representation of g. Every
/// built-in family (and every rescaling g(c t) of one) is a finite sum of
/// such terms, which lets the discretization use exact closed forms.
struct PowerTerm {
  double coeff;
  double exponent;
};

/// A Young function G with derivative g = G'. g is extended oddly to t < 0
/// and G evenly. Instances are immutable and cheap to copy.
class YoungFunction {
 public:
  using Scalar = std::function<double(double)>;

  /// G(t) = t^p / p. Requires p > 2 unless `outside_hypotheses` is set, in
  /// which case p >= 2 is accepted.
  static YoungFunction power(double p, bool outside_hypotheses = false);

  /// G(t) = a t^p / p + b t^q / q, with p, q > 2, a, b >= 0, a + b > 0.
  static YoungFunction power_sum(double p, double q, double a, double b);

  /// Arbitrary g supplied as callables on t >= 0. G is obtained by adaptive
  /// quadrature when not given. The declared constants are trusted; the
  /// verification suite is what checks them.
  static YoungFunction custom(std::string name, Scalar g, Scalar g_prime,
                              double lambda, double Lambda, Scalar G = {});

  /// g_R(t) = g(R^{-s} t). Preserves (lambda, Lambda).
  YoungFunction rescaled(double R, double s) const;

  const std::string& name() const { return name_; }
  double lambda() const { return lambda_; }
  double Lambda() const { return Lambda_; }
  double p_minus() const { return lambda_ + 1.0; }
  double p_plus() const { return Lambda_ + 1.0; }

  /// Non-empty iff g is a finite power series.
  const std::vector<PowerTerm>& terms() const { return terms_; }
  bool is_power_series() const { return !terms_.empty(); }

  double g(double t) const;
  double g_prime(double t) const;
  double G(double t) const;

  /// Phi(T) = int_0^T G(tau)/tau dtau; the radial integral of G(v r^{-s})
  /// dr/r over (rho, inf) equals Phi(v rho^{-s}) / s.
  double log_moment(double T) const;

  /// Inverse of g on [0, inf): bracket [0, max(1, v)], doubled until g
  /// exceeds v, then 80 bisection steps.
  double g_inverse(double v) const;

  /// Complementary function sup_t (t w - G(t)), attained at t = g^{-1}(w).
  double conjugate(double w) const;

 private:
  struct Custom {
    Scalar g;
    Scalar g_prime;
    Scalar G;
  };

  YoungFunction() = default;

  std::string name_;
  double lambda_ = 0.0;
  double Lambda_ = 0.0;
  std::vector<PowerTerm> terms_;
  std::shared_ptr<const Custom> custom_;
  Json descriptor_;

  friend Json young_to_json(const YoungFunction& yf);
  friend YoungFunction young_from_json(const Json& j);
};

/// min and max of t g'(t) / g(t) over a logarithmic grid on [t_min, t_max].
std::pair<double, double> estimate_ellipticity(const YoungFunction& yf,
                                               double t_min, double t_max,
                                               int n_samples);

/// Seeded sampling check of the structural conditions and every technical
/// inequality the regularity theory relies on. Never throws for a bad
/// function: structural failures become failing records.
Report check_inequality_suite(const YoungFunction& yf, std::int64_t n_samples,
                              std::uint64_t seed, double rtol = 1e-10);

/// Young's inequality t w <= G(t) + G~(w) over a log-spaced grid, plus the
/// equality gap at w = g(t).
Report check_conjugate_sweep(const YoungFunction& yf, int grid = 200,
                             double gap_tol = 1e-8);

/// Families readable from configuration: {"family": "power"|"power_sum",
/// "params": {...}}. The "test_nonconvex" family (negative control for the
/// suite) is only accepted with "test_hook": true.
YoungFunction young_from_json(const Json& j);
Json young_to_json(const YoungFunction& yf);

}  // namespace gflap
