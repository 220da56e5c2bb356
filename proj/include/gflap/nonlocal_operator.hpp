#pragma once

#include <optional>
#include <vector>

#include "gflap/lattice.hpp"
#include "gflap/report.hpp"
#include "gflap/young.hpp"

namespace gflap {

enum class FarTailMode { Truncate, AnalyticBound };

struct QuadratureSpec {
  /// Strictly decreasing principal-value cutoffs; the last one is "eps".
  std::vector<double> eps_schedule = default_schedule();
  double R_far = 10.0;
  FarTailMode far_tail_mode = FarTailMode::AnalyticBound;
  /// Order used for Richardson extrapolation. Unset: estimated from the
  /// last three cutoffs.
  std::optional<double> assumed_order;
  double abs_tol = 1e-11;
  /// Composite Gauss-Legendre panels (16 points each) over [0, pi) in 2D.
  int angular_panels = 8;

  double eps() const { return eps_schedule.back(); }
  void validate() const;

  static std::vector<double> default_schedule();  // 2^-3, ..., 2^-10
};

QuadratureSpec quadrature_from_json(const Json& j);
Json quadrature_to_json(const QuadratureSpec& q);

struct PointwiseResult {
  double value = 0.0;         // at the smallest cutoff
  double extrapolated = 0.0;  // Richardson limit
  double order = 0.0;         // log-log slope of successive differences; NaN if stationary
  bool converged = true;
  double far_bracket = 0.0;   // half-width of the unresolved far-field contribution
  std::vector<double> cutoffs;
  std::vector<double> values;

  Json to_json() const;
};

/// nω_n, the surface measure of the unit sphere in R^n (n = 1, 2).
double unit_sphere_area(int n);

/// 2 ∫_{|x-y|>eps} g((u(x)-u(y)) / |x-y|^s) dy / |x-y|^{n+s} for every eps
/// in the schedule. Within the unit annulus the two antipodal directions
/// are combined before integrating.
PointwiseResult pointwise_apply(const YoungFunction& yf, const Field& u,
                                const Point& x, double s,
                                const QuadratureSpec& q = {});
PointwiseResult pointwise_apply(const YoungFunction& yf,
                                const LatticeFunction& u, const Point& x,
                                double s, const QuadratureSpec& q = {});

/// ∬ g(D_s u) D_s phi dμ with dμ = dx dy / |x-y|^n. phi must vanish on the
/// boundary of its grid and outside it; u lives on the same grid with a zero
/// or analytic exterior.
double weak_pairing(const YoungFunction& yf, const LatticeFunction& u,
                    const LatticeFunction& phi, double s,
                    const QuadratureSpec& q = {});

double s_holder_quotient(const LatticeFunction& u, const Point& x,
                         const Point& y, double s);

enum class TailMode { G, PPlus, PMinus };

/// Nonlocal tails centred at x: Tail_g uses the odd inverse of g; Tail_p
/// uses p = p+ or p-. A bounded exterior enters through its bound M.
double tail(const YoungFunction& yf, const Field& u, const Point& x, double R,
            double s, TailMode mode);
double tail(const YoungFunction& yf, const LatticeFunction& u, const Point& x,
            double R, double s, TailMode mode);

/// K = (nω_n/s) g(2|φ|) + (nω_n/(2(1-s))) g'(2|∇φ|) |D²φ|; bounds the
/// principal value integral of a C² function (without the factor 2).
double lieberman_bound(const YoungFunction& yf, double sup_u, double sup_grad,
                       double sup_hess, int n, double s);

/// u0(x) = x_+^s on the line, with its kink as a breakpoint.
Field profile_field(double s);

/// d_+^s for the ball B_R(center), with the ray exit as a breakpoint.
Field ball_distance_field(int dim, const Point& center, double R, double s);

/// ∫_{-∞}^0 g(x^s / |x-y|^s) dy / |x-y|^{1+s} = x^{-s} G(1) / s.
double profile_I1(const YoungFunction& yf, double s, double x);
double profile_I1_numeric(const YoungFunction& yf, double s, double x);

/// Bound on |I_eps| for u0 = x_+^s, I_eps being the truncated integral
/// without the factor 2; C = 2^{p+}.
double profile_residual_bound(const YoungFunction& yf, double s, double x,
                              double eps);

/// I_eps for u0 = x_+^s (no factor 2), from the exact split
/// I_eps = x^{-s} G(A_eps) / s + I_2 with A_eps = (x^s - (x-eps)^s) / eps^s.
double profile_truncated_integral(const YoungFunction& yf, double s, double x,
                                  double eps);

/// h(x) = 2 ∫_{supp v} [g((u(x)-u(y)-v(y))/|x-y|^s) - g((u(x)-u(y))/|x-y|^s)]
///        dy / |x-y|^{n+s}; supp v is v's grid box and must not contain x.
double exterior_correction(const YoungFunction& yf, const Field& u,
                           const LatticeFunction& v, const Point& x, double s,
                           const QuadratureSpec& q = {});

/// Pointwise sum of two fields (supports merged into a bounding box).
Field field_sum(const Field& a, const Field& b);

}  // namespace gflap
