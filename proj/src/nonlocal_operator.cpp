#include "gflap/nonlocal_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gflap/discretization.hpp"
#include "gflap/errors.hpp"
#include "gflap/quadrature.hpp"

namespace gflap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRelTol = 1e-10;

Point along(const Point& x, const Point& d, double r) {
  return {x[0] + r * d[0], x[1] + r * d[1]};
}

// Largest r >= 0 with x + r d in the box (0 if the ray misses it).
double box_exit(const Box& b, const Point& x, const Point& d) {
  double t_in = -kInf, t_out = kInf;
  for (int a = 0; a < b.dim; ++a) {
    if (d[a] == 0.0) {
      if (x[a] < b.lo[a] || x[a] > b.hi[a]) return 0.0;
      continue;
    }
    const double t1 = (b.lo[a] - x[a]) / d[a];
    const double t2 = (b.hi[a] - x[a]) / d[a];
    t_in = std::max(t_in, std::min(t1, t2));
    t_out = std::min(t_out, std::max(t1, t2));
  }
  if (t_in > t_out) return 0.0;
  return std::max(0.0, t_out);
}

struct Direction {
  Point dir;
  double weight;
};

// Antipodal pairs: the returned directions d cover a half circle, each used
// together with -d.
std::vector<Direction> half_directions(int dim, int panels) {
  if (dim == 1) return {{{1.0, 0.0}, 1.0}};
  const auto& rule = quad::gauss_legendre(16);
  std::vector<Direction> out;
  const double width = std::numbers::pi / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * width;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double th = mid + 0.5 * width * rule.nodes[q];
      out.push_back({{std::cos(th), std::sin(th)}, 0.5 * width * rule.weights[q]});
    }
  }
  return out;
}

std::vector<Direction> full_directions(int dim, int panels) {
  if (dim == 1) return {{{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 1.0}};
  std::vector<Direction> out;
  for (const auto& d : half_directions(dim, panels)) {
    out.push_back(d);
    out.push_back({{-d.dir[0], -d.dir[1]}, d.weight});
  }
  return out;
}

void collect_breaks(const Field& u, const Point& x, const Point& d,
                    std::vector<double>& out) {
  if (u.dim == 1)
    for (double k : u.kinks) {
      const double r = (k - x[0]) * d[0];
      if (r > 0) out.push_back(r);
    }
  if (u.ray_breaks) u.ray_breaks(x, d, out);
  if (u.support) out.push_back(box_exit(*u.support, x, d));
  if (u.known_box) out.push_back(box_exit(*u.known_box, x, d));
}

// ∫_rho^∞ g(c r^{-s}) r^{-1-s} dr = G(c rho^{-s}) / (s c).
double closed_tail(const YoungFunction& yf, double c, double rho, double s) {
  if (c == 0.0) return 0.0;
  if (rho == kInf) return 0.0;
  return yf.G(c * std::pow(rho, -s)) / (s * c);
}

// ∫_R^∞ F(r) r^{-1-a} dr = (R^{-a}/a) ∫_0^1 F(R u^{-1/a}) du.
double ray_to_infinity(const std::function<double(double)>& F, double R,
                       double a, double abs_tol) {
  const double pref = std::pow(R, -a) / a;
  auto h = [&](double u) { return F(R * std::pow(u, -1.0 / a)); };
  return pref * quad::integrate(h, 0.0, 1.0, abs_tol / pref, kRelTol);
}

}  // namespace

std::vector<double> QuadratureSpec::default_schedule() {
  std::vector<double> out;
  for (int k = 3; k <= 10; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

void QuadratureSpec::validate() const {
  require(!eps_schedule.empty(), ErrorKind::Configuration,
          "eps_schedule must not be empty");
  for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
    require(eps_schedule[k] > 0.0, ErrorKind::Configuration,
            "eps_schedule entries must be positive");
    if (k > 0)
      require(eps_schedule[k] < eps_schedule[k - 1], ErrorKind::Configuration,
              "eps_schedule must be strictly decreasing");
  }
  require(R_far >= 1.0 && R_far > eps_schedule.front(),
          ErrorKind::Configuration, "R_far must be at least 1");
  require(abs_tol > 0.0, ErrorKind::Configuration, "abs_tol must be positive");
  require(angular_panels >= 1, ErrorKind::Configuration,
          "angular_panels must be positive");
}

QuadratureSpec quadrature_from_json(const Json& j) {
  QuadratureSpec q;
  if (j.is_null()) return q;
  require(j.is_object(), ErrorKind::Configuration, "quadrature must be an object");
  if (j.contains("eps_schedule"))
    q.eps_schedule = j["eps_schedule"].get<std::vector<double>>();
  else if (j.contains("eps"))
    q.eps_schedule = {j["eps"].get<double>()};
  q.R_far = j.value("R_far", q.R_far);
  if (j.contains("far_tail_mode")) {
    const std::string m = j["far_tail_mode"];
    if (m == "truncate")
      q.far_tail_mode = FarTailMode::Truncate;
    else if (m == "analytic_bound")
      q.far_tail_mode = FarTailMode::AnalyticBound;
    else
      fail(ErrorKind::Configuration, "unknown far_tail_mode '" + m + "'");
  }
  if (j.contains("assumed_order") && !j["assumed_order"].is_null())
    q.assumed_order = j["assumed_order"].get<double>();
  q.abs_tol = j.value("abs_tol", q.abs_tol);
  q.angular_panels = j.value("angular_panels", q.angular_panels);
  q.validate();
  return q;
}

Json quadrature_to_json(const QuadratureSpec& q) {
  Json j = {{"eps_schedule", q.eps_schedule},
            {"R_far", q.R_far},
            {"far_tail_mode", q.far_tail_mode == FarTailMode::Truncate
                                  ? "truncate"
                                  : "analytic_bound"},
            {"abs_tol", q.abs_tol},
            {"angular_panels", q.angular_panels}};
  j["assumed_order"] = q.assumed_order ? Json(*q.assumed_order) : Json(nullptr);
  return j;
}

Json PointwiseResult::to_json() const {
  auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return {{"value", num(value)},       {"extrapolated", num(extrapolated)},
          {"order", num(order)},       {"converged", converged},
          {"far_bracket", num(far_bracket)}, {"cutoffs", cutoffs},
          {"values", values}};
}

double unit_sphere_area(int n) {
  require(n == 1 || n == 2, ErrorKind::Domain, "dimension must be 1 or 2");
  return n == 1 ? 2.0 : 2.0 * std::numbers::pi;
}

PointwiseResult pointwise_apply(const YoungFunction& yf, const Field& u,
                                const Point& x, double s,
                                const QuadratureSpec& q) {
  q.validate();
  require(s > 0.0 && s < 1.0, ErrorKind::Domain, "s must lie in (0,1)");
  const auto& eps = q.eps_schedule;
  const std::size_t K = eps.size();

  double r_sym = 1.0;
  if (u.known_box) {
    const double dist = u.known_box->inner_distance(x);
    require(dist > eps.front(), ErrorKind::InsufficientExteriorData,
            "point is within the largest cutoff of the known region");
    r_sym = std::min(r_sym, dist);
  }
  r_sym = std::max(r_sym, eps.front());

  const double ux = u.value(x);
  auto D = [&](const Point& d, double r) {
    return (ux - u.value(along(x, d, r))) * std::pow(r, -s);
  };
  auto integ = [&](const std::function<double(double)>& f, double a, double b,
                   const std::vector<double>& br) {
    if (!(b > a)) return 0.0;
    return quad::integrate_split(f, a, b, br, q.abs_tol, kRelTol);
  };

  std::vector<double> acc(K, 0.0);
  double bracket = 0.0;

  auto far = [&](const Point& d, const std::vector<double>& br) {
    auto f = [&](double r) { return yf.g(D(d, r)) * std::pow(r, -1.0 - s); };
    const bool truncate = q.far_tail_mode == FarTailMode::Truncate;
    if (u.support) {
      const double b = std::max(r_sym, box_exit(*u.support, x, d));
      if (!truncate) return integ(f, r_sym, b, br) + closed_tail(yf, ux, b, s);
      const double mid = integ(f, r_sym, std::min(b, q.R_far), br);
      const double stop = std::max(b, q.R_far);
      bracket += std::abs(closed_tail(yf, ux, stop, s));
      return mid + closed_tail(yf, ux, b, s) - closed_tail(yf, ux, stop, s);
    }
    if (u.known_box) {
      double b = std::max(r_sym, box_exit(*u.known_box, x, d));
      if (truncate) b = std::min(b, q.R_far);
      const double M = u.outside_bound;
      double lo = closed_tail(yf, ux - M, b, s);
      double hi = closed_tail(yf, ux + M, b, s);
      if (truncate && q.R_far > b) {
        lo -= closed_tail(yf, ux - M, q.R_far, s);
        hi -= closed_tail(yf, ux + M, q.R_far, s);
        bracket += std::max(std::abs(closed_tail(yf, ux - M, q.R_far, s)),
                            std::abs(closed_tail(yf, ux + M, q.R_far, s)));
      }
      bracket += 0.5 * std::abs(hi - lo);
      return integ(f, r_sym, b, br) + 0.5 * (lo + hi);
    }
    const double mid = integ(f, r_sym, q.R_far, br);
    if (truncate) {
      bracket = kNaN;
      return mid;
    }
    return mid + ray_to_infinity([&](double r) { return yf.g(D(d, r)); },
                                 q.R_far, s, q.abs_tol);
  };

  for (const auto& [dir, w] : half_directions(u.dim, q.angular_panels)) {
    const Point neg{-dir[0], -dir[1]};
    std::vector<double> br_pos, br_neg, br_both;
    collect_breaks(u, x, dir, br_pos);
    collect_breaks(u, x, neg, br_neg);
    br_both = br_pos;
    br_both.insert(br_both.end(), br_neg.begin(), br_neg.end());

    auto near = [&](double r) {
      return (yf.g(D(dir, r)) + yf.g(D(neg, r))) * std::pow(r, -1.0 - s);
    };
    const double common = integ(near, eps.front(), r_sym, br_both) +
                          far(dir, br_pos) + far(neg, br_neg);
    double running = common;
    for (std::size_t k = 0; k < K; ++k) {
      if (k > 0) running += integ(near, eps[k], eps[k - 1], br_both);
      acc[k] += w * running;
    }
  }

  PointwiseResult res;
  res.cutoffs = eps;
  res.values.resize(K);
  for (std::size_t k = 0; k < K; ++k) res.values[k] = 2.0 * acc[k];
  res.value = res.values.back();
  res.far_bracket = 2.0 * bracket;

  // Order: slope of log|v_k - v_{k-1}| against log eps_k.
  const double scale = 1.0 + std::abs(res.value);
  std::vector<double> lx, ly;
  for (std::size_t k = 1; k < K; ++k) {
    const double dv = std::abs(res.values[k] - res.values[k - 1]);
    if (dv > 1e-14 * scale) {
      lx.push_back(std::log(eps[k]));
      ly.push_back(std::log(dv));
    }
  }
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
    mx /= lx.size();
    my /= lx.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    res.order = sxx > 0 ? sxy / sxx : kNaN;
  } else {
    res.order = kNaN;
  }
  res.converged = !(res.order < 0.0);

  res.extrapolated = res.value;
  if (K >= 3) {
    const double da = res.values[K - 2] - res.values[K - 3];
    const double db = res.values[K - 1] - res.values[K - 2];
    const double rho = eps[K - 2] / eps[K - 1];
    double order = kNaN;
    if (q.assumed_order)
      order = *q.assumed_order;
    else if (da * db > 0 && std::abs(da) > std::abs(db))
      order = std::log(da / db) / std::log(rho);
    if (std::isfinite(order) && order > 0)
      res.extrapolated = res.value + db / (std::pow(rho, order) - 1.0);
  }
  return res;
}

PointwiseResult pointwise_apply(const YoungFunction& yf,
                                const LatticeFunction& u, const Point& x,
                                double s, const QuadratureSpec& q) {
  if (std::holds_alternative<BoundedExterior>(u.exterior()))
    require(u.grid().box().inner_distance(x) > q.eps_schedule.front(),
            ErrorKind::InsufficientExteriorData,
            "point is within the largest cutoff of the box boundary");
  return pointwise_apply(yf, as_field(u), x, s, q);
}

double weak_pairing(const YoungFunction& yf, const LatticeFunction& u,
                    const LatticeFunction& phi, double s,
                    const QuadratureSpec& q) {
  require(phi.has_zero_exterior(), ErrorKind::InvalidTestFunction,
          "test function must have a zero exterior");
  require(u.grid().same_as(phi.grid()), ErrorKind::Configuration,
          "u and phi must share a grid");
  const Grid& grid = phi.grid();
  for (std::size_t i = 0; i < grid.size(); ++i)
    require(!grid.on_boundary(i) || phi[i] == 0.0,
            ErrorKind::InvalidTestFunction,
            "test function must vanish on the box boundary");
  require(!std::holds_alternative<BoundedExterior>(u.exterior()),
          ErrorKind::InsufficientExteriorData,
          "weak pairing needs the exterior values of u");

  std::vector<std::size_t> all(grid.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const bool analytic = !u.has_zero_exterior();
  DiscreteModular mod(yf, grid, all, s, !analytic);
  double total = mod.directional(u.values(), phi.values());
  if (!analytic) return total;

  // Cells against everything beyond the cell region, with u's exterior.
  const Box region = grid.cell_region();
  const auto& ext = std::get<AnalyticExterior>(u.exterior()).function.fn;
  const auto dirs = full_directions(grid.dim(), 4 * q.angular_panels);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (phi[i] == 0.0) continue;
    const Point xi = grid.node(i);
    const double ui = u[i];
    double inner = 0.0;
    for (const auto& [d, w] : dirs) {
      const double rho = box_exit(region, xi, d);
      auto F = [&](double r) {
        return yf.g((ui - ext(along(xi, d, r))) * std::pow(r, -s));
      };
      inner += w * ray_to_infinity(F, rho, s, q.abs_tol);
    }
    total += 2.0 * grid.cell_volume() * phi[i] * inner;
  }
  return total;
}

double s_holder_quotient(const LatticeFunction& u, const Point& x,
                         const Point& y, double s) {
  const double r = distance(x, y, u.dim());
  require(r > 0.0, ErrorKind::Domain, "s_holder_quotient needs x != y");
  return (u.evaluate(x) - u.evaluate(y)) / std::pow(r, s);
}

double tail(const YoungFunction& yf, const Field& u, const Point& x, double R,
            double s, TailMode mode) {
  require(R > 0.0, ErrorKind::Domain, "tail radius must be positive");
  require(s > 0.0 && s < 1.0, ErrorKind::Domain, "s must lie in (0,1)");
  const double p = mode == TailMode::PPlus    ? yf.p_plus()
                   : mode == TailMode::PMinus ? yf.p_minus()
                                              : 0.0;
  if (u.growth) {
    const double limit =
        mode == TailMode::G ? s + s / yf.Lambda() : s * p / (p - 1.0);
    require(*u.growth < limit, ErrorKind::DivergentTail,
            "exterior growth makes the tail integral diverge");
  }
  const double Rs = std::pow(R, s);
  auto kernel = [&](double val, double r) {
    if (mode == TailMode::G) return yf.g(Rs * val * std::pow(r, -s)) * std::pow(r, -1.0 - s);
    return std::pow(std::abs(val), p - 1.0) * std::pow(r, -1.0 - s * p);
  };
  const auto dirs = full_directions(u.dim, 16);
  double total = 0.0;
  for (const auto& [d, w] : dirs) {
    std::vector<double> br;
    collect_breaks(u, x, d, br);
    auto f = [&](double r) { return kernel(u.value(along(x, d, r)), r); };
    double part;
    if (u.support) {
      const double b = std::max(R, box_exit(*u.support, x, d));
      part = b > R ? quad::integrate_split(f, R, b, br, 1e-12, kRelTol) : 0.0;
    } else if (u.known_box) {
      const double b = std::max(R, box_exit(*u.known_box, x, d));
      part = b > R ? quad::integrate_split(f, R, b, br, 1e-12, kRelTol) : 0.0;
      const double M = u.outside_bound;
      if (mode == TailMode::G)
        part += M == 0.0 ? 0.0 : yf.G(Rs * M * std::pow(b, -s)) / (s * Rs * M);
      else
        part += std::pow(M, p - 1.0) * std::pow(b, -s * p) / (s * p);
    } else {
      const double a = mode == TailMode::G ? s : s * p;
      part = ray_to_infinity(
          [&](double r) { return f(r) * std::pow(r, 1.0 + a); }, R, a, 1e-13);
    }
    total += w * part;
  }
  if (mode == TailMode::G) {
    const double I = Rs * total;
    const double t = yf.g_inverse(std::abs(I));
    return I < 0 ? -t : t;
  }
  return std::pow(std::pow(R, s * p) * total, 1.0 / (p - 1.0));
}

double tail(const YoungFunction& yf, const LatticeFunction& u, const Point& x,
            double R, double s, TailMode mode) {
  return tail(yf, as_field(u), x, R, s, mode);
}

double lieberman_bound(const YoungFunction& yf, double sup_u, double sup_grad,
                       double sup_hess, int n, double s) {
  require(sup_u >= 0 && sup_grad >= 0 && sup_hess >= 0, ErrorKind::Domain,
          "norms must be nonnegative");
  require(s > 0.0 && s < 1.0, ErrorKind::Domain, "s must lie in (0,1)");
  const double area = unit_sphere_area(n);
  return area / s * yf.g(2.0 * sup_u) +
         area / (2.0 * (1.0 - s)) * yf.g_prime(2.0 * sup_grad) * sup_hess;
}

Field profile_field(double s) {
  Field f = analytic_field(
      1, [s](const Point& x) { return x[0] > 0 ? std::pow(x[0], s) : 0.0; },
      {0.0});
  f.growth = s;
  return f;
}

Field ball_distance_field(int dim, const Point& center, double R, double s) {
  Box support{dim, center, center};
  for (int a = 0; a < dim; ++a) {
    support.lo[a] -= R;
    support.hi[a] += R;
  }
  std::vector<double> kinks;
  if (dim == 1) kinks = {center[0] - R, center[0] + R};
  Field f = analytic_field(
      dim,
      [=](const Point& x) {
        const double d = R - distance(x, center, dim);
        return d > 0 ? std::pow(d, s) : 0.0;
      },
      kinks, support);
  if (dim == 2)
    f.ray_breaks = [=](const Point& x, const Point& d, std::vector<double>& out) {
      const double bx = x[0] - center[0], by = x[1] - center[1];
      const double b = bx * d[0] + by * d[1];
      const double c = bx * bx + by * by - R * R;
      const double disc = b * b - c;
      if (disc <= 0) return;
      const double sq = std::sqrt(disc);
      for (double r : {-b - sq, -b + sq})
        if (r > 0) out.push_back(r);
      if (-b > 0) out.push_back(-b);  // closest approach to the centre
    };
  return f;
}

double profile_I1(const YoungFunction& yf, double s, double x) {
  require(x > 0.0, ErrorKind::Domain, "profile_I1 needs x > 0");
  require(s > 0.0 && s < 1.0, ErrorKind::Domain, "s must lie in (0,1)");
  return std::pow(x, -s) * yf.G(1.0) / s;
}

double profile_I1_numeric(const YoungFunction& yf, double s, double x) {
  require(x > 0.0, ErrorKind::Domain, "profile_I1 needs x > 0");
  const double xs = std::pow(x, s);
  return ray_to_infinity(
      [&](double r) { return yf.g(xs * std::pow(r, -s)); }, x, s, 1e-15);
}

double profile_residual_bound(const YoungFunction& yf, double s, double x,
                              double eps) {
  require(eps > 0.0 && eps < x, ErrorKind::Domain,
          "profile_residual_bound needs 0 < eps < x");
  const double A = (std::pow(x, s) - std::pow(x - eps, s)) / std::pow(eps, s);
  const double C = std::pow(2.0, yf.p_plus());
  return std::pow(x, -s) / s * (C * A + yf.G(A));
}

double profile_truncated_integral(const YoungFunction& yf, double s, double x,
                                  double eps) {
  require(eps > 0.0 && eps < x, ErrorKind::Domain,
          "profile_truncated_integral needs 0 < eps < x");
  const double A = (std::pow(x, s) - std::pow(x - eps, s)) / std::pow(eps, s);
  const double xs = std::pow(x, s);
  auto f = [&](double y) {
    const double r = y - x;
    return yf.g((xs - std::pow(y, s)) * std::pow(r, -s)) * std::pow(r, -1.0 - s);
  };
  const double I2 = quad::integrate(f, x + eps, x * x / (x - eps), 1e-14, 1e-12);
  return std::pow(x, -s) * yf.G(A) / s + I2;
}

double exterior_correction(const YoungFunction& yf, const Field& u,
                           const LatticeFunction& v, const Point& x, double s,
                           const QuadratureSpec& q) {
  require(v.has_zero_exterior(), ErrorKind::HypothesisViolation,
          "v must vanish outside its grid");
  const Box box = v.grid().box();
  const int n = v.dim();
  double gap = kInf;
  {
    double d2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double e = std::max({box.lo[a] - x[a], 0.0, x[a] - box.hi[a]});
      d2 += e * e;
    }
    gap = std::sqrt(d2);
  }
  require(gap > 1e-12, ErrorKind::HypothesisViolation,
          "support of v touches the evaluation point");

  const double ux = u.value(x);
  auto integrand = [&](const Point& y) {
    const double r = distance(x, y, n);
    const double uy = u.value(y);
    const double rs = std::pow(r, -s);
    return (yf.g((ux - uy - v.evaluate(y)) * rs) - yf.g((ux - uy) * rs)) *
           std::pow(r, -n - s);
  };
  const Grid& grid = v.grid();
  std::vector<double> br0;
  for (int i = 0; i < grid.nodes(0); ++i) br0.push_back(box.lo[0] + i * grid.h());
  if (n == 1) {
    br0.insert(br0.end(), u.kinks.begin(), u.kinks.end());
    return 2.0 * quad::integrate_split(
                     [&](double y) { return integrand({y, 0.0}); }, box.lo[0],
                     box.hi[0], br0, q.abs_tol, kRelTol);
  }
  std::vector<double> br1;
  for (int j = 0; j < grid.nodes(1); ++j) br1.push_back(box.lo[1] + j * grid.h());
  auto row = [&](double y0) {
    return quad::integrate_split(
        [&](double y1) { return integrand({y0, y1}); }, box.lo[1], box.hi[1],
        br1, q.abs_tol, 1e-8);
  };
  return 2.0 * quad::integrate_split(row, box.lo[0], box.hi[0], br0, q.abs_tol,
                                     1e-8);
}

Field field_sum(const Field& a, const Field& b) {
  require(a.dim == b.dim, ErrorKind::Configuration, "field dimensions differ");
  require(!a.known_box && !b.known_box, ErrorKind::InsufficientExteriorData,
          "cannot add fields with bounded exteriors");
  Field f;
  f.dim = a.dim;
  f.value = [va = a.value, vb = b.value](const Point& x) { return va(x) + vb(x); };
  f.kinks = a.kinks;
  f.kinks.insert(f.kinks.end(), b.kinks.begin(), b.kinks.end());
  if (a.ray_breaks || b.ray_breaks)
    f.ray_breaks = [ra = a.ray_breaks, rb = b.ray_breaks](
                       const Point& x, const Point& d, std::vector<double>& out) {
      if (ra) ra(x, d, out);
      if (rb) rb(x, d, out);
    };
  if (a.support && b.support) {
    Box box = *a.support;
    for (int k = 0; k < f.dim; ++k) {
      box.lo[k] = std::min(box.lo[k], b.support->lo[k]);
      box.hi[k] = std::max(box.hi[k], b.support->hi[k]);
    }
    f.support = box;
  }
  if (a.growth || b.growth)
    f.growth = std::max(a.growth.value_or(0.0), b.growth.value_or(0.0));
  return f;
}

}  // namespace gflap
