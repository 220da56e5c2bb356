#include "gflap/regularity_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "gflap/errors.hpp"
#include "gflap/parallel.hpp"

namespace gflap {

const DiagnosticEntry* DiagnosticsReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

bool DiagnosticsReport::pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const DiagnosticEntry& e) { return e.pass.value_or(true); });
}

Json DiagnosticsReport::to_json() const {
  Json list = Json::array();
  for (const auto& e : entries) {
    Json j = {{"name", e.name}, {"value", e.value}, {"params", e.params}};
    j["status"] = e.pass ? (*e.pass ? "pass" : "fail") : "informational";
    list.push_back(j);
  }
  return {{"entries", list}, {"warnings", warnings}, {"pass", pass()}};
}

Json grid_to_json(const Grid& grid) {
  Json nodes = Json::array();
  for (int a = 0; a < grid.dim(); ++a) nodes.push_back(grid.nodes(a));
  return {{"box", box_to_json(grid.box())}, {"nodes", nodes}, {"h", grid.h()}};
}

void write_series_csv(const std::filesystem::path& path, const Series& series,
                      const std::string& x_name, const std::string& y_name) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::Configuration,
          "cannot write " + path.string());
  out << x_name << ',' << y_name << '\n' << std::setprecision(17);
  for (const auto& [x, y] : series) out << x << ',' << y << '\n';
}

std::vector<double> default_radii(double h, double r_max, int count) {
  require(h > 0 && r_max > 3 * h && count >= 2, ErrorKind::Configuration,
          "radii need r_max > 3h and at least two radii");
  std::vector<double> r(count);
  const double lo = std::log(3 * h), hi = std::log(r_max);
  for (int k = 0; k < count; ++k) r[k] = std::exp(lo + (hi - lo) * k / (count - 1));
  return r;
}

std::vector<double> middle_decade_radii(double h, double r_max, int count) {
  require(h > 0 && r_max > 3 * h && count >= 2, ErrorKind::Configuration,
          "radii need r_max > 3h and at least two radii");
  double lo = std::log10(3 * h), hi = std::log10(r_max);
  if (hi - lo > 1.0) {
    const double mid = 0.5 * (lo + hi);
    lo = mid - 0.5;
    hi = mid + 0.5;
  }
  std::vector<double> r(count);
  for (int k = 0; k < count; ++k) r[k] = std::pow(10.0, lo + (hi - lo) * k / (count - 1));
  return r;
}

Series oscillation_profile(const LatticeFunction& u, const Point& x0,
                           const std::vector<double>& radii,
                           std::vector<std::string>* warnings) {
  const Grid& grid = u.grid();
  Series out;
  for (double r : radii) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (distance(grid.node(i), x0, grid.dim()) > r * (1 + 1e-12)) continue;
      lo = std::min(lo, u[i]);
      hi = std::max(hi, u[i]);
    }
    if (hi < lo) {
      if (warnings)
        warnings->push_back("radius " + std::to_string(r) +
                            " dropped: no grid node in the ball");
      continue;
    }
    out.emplace_back(r, hi - lo);
  }
  return out;
}

HolderFit fit_holder_exponent(const Series& profile) {
  std::vector<double> lx, ly;
  for (const auto& [r, osc] : profile)
    if (r > 0 && osc > 0) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(osc));
    }
  require(lx.size() >= 3, ErrorKind::InsufficientData,
          "Hölder fit needs at least three radii with positive oscillation");
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  require(sxx > 0, ErrorKind::InsufficientData, "Hölder fit needs distinct radii");
  HolderFit fit;
  fit.alpha = sxy / sxx;
  const double logC = my - fit.alpha * mx;
  fit.C = std::exp(logC);
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.alpha * lx[i] + logC);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  fit.points = lx.size();
  return fit;
}

BoundaryRatio boundary_ratio_profile(const LatticeFunction& u,
                                     const std::function<double(const Point&)>& d,
                                     double s, double d_lo, double d_hi) {
  require(d_lo > 0 && d_hi > d_lo, ErrorKind::Configuration,
          "boundary band needs 0 < d_lo < d_hi");
  BoundaryRatio out;
  out.sup_ratio = 0.0;
  out.inf_ratio = std::numeric_limits<double>::infinity();
  const Grid& grid = u.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double di = d(grid.node(i));
    if (di < d_lo || di > d_hi) continue;
    const double ratio = std::abs(u[i]) / std::pow(di, s);
    out.sup_ratio = std::max(out.sup_ratio, ratio);
    out.inf_ratio = std::min(out.inf_ratio, ratio);
    out.series.emplace_back(di, ratio);
  }
  out.samples = out.series.size();
  require(out.samples > 0, ErrorKind::Configuration,
          "boundary band contains no grid node");
  std::sort(out.series.begin(), out.series.end());
  return out;
}

DistanceResidual distance_profile_residual(const YoungFunction& yf, int dim,
                                           const Point& center, double R,
                                           double s, double d_lo, double d_hi,
                                           const QuadratureSpec& q,
                                           int n_points) {
  q.validate();
  require(d_lo >= q.eps() && d_hi > d_lo && d_hi < R, ErrorKind::Configuration,
          "band must lie in [smallest cutoff, R)");
  require(n_points >= 1, ErrorKind::Configuration, "need at least one band point");
  require(q.eps_schedule.size() >= 2, ErrorKind::Configuration,
          "stability needs at least two cutoffs");
  const Field field = ball_distance_field(dim, center, R, s);
  std::vector<PointwiseResult> results(n_points);
  std::vector<double> ds(n_points);
  for (int k = 0; k < n_points; ++k)
    ds[k] = n_points == 1 ? d_lo : d_lo + (d_hi - d_lo) * k / (n_points - 1);
  parallel_blocks(n_points, [&](std::size_t k) {
    const Point x{center[0] + R - ds[k], center[1]};
    results[k] = pointwise_apply(yf, field, x, s, q);
  });
  DistanceResidual out;
  const std::size_t K = q.eps_schedule.size();
  for (int k = 0; k < n_points; ++k) {
    out.sup = std::max(out.sup, std::abs(results[k].values[K - 1]));
    out.sup_previous = std::max(out.sup_previous, std::abs(results[k].values[K - 2]));
    out.sup_extrapolated = std::max(out.sup_extrapolated, std::abs(results[k].extrapolated));
    out.samples.emplace_back(ds[k], results[k].values[K - 1]);
  }
  out.relative_change =
      out.sup > 0 ? std::abs(out.sup - out.sup_previous) / out.sup : 0.0;
  return out;
}

HarnackResult weak_harnack_check(const YoungFunction& yf,
                                 const LatticeFunction& u, double K, double R,
                                 double s, const Point& x0) {
  require(R > 0 && K >= 0, ErrorKind::Domain, "Harnack check needs R > 0, K >= 0");
  const Grid& grid = u.grid();
  const int n = grid.dim();
  const double scale = std::max(1.0, u.sup_abs());
  double inf_inner = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  std::size_t count = 0;
  const double Rs = std::pow(R, s);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(u[i] >= -1e-8 * scale, ErrorKind::HypothesisViolation,
            "weak Harnack check needs u >= 0");
    const double v = std::max(u[i], 0.0);
    const double r = distance(grid.node(i), x0, n);
    if (r <= 0.25 * R) inf_inner = std::min(inf_inner, v);
    if (r >= 0.5 * R && r < R) {
      sum += yf.g(v / Rs);
      ++count;
    }
  }
  require(std::isfinite(inf_inner) && count > 0, ErrorKind::InsufficientData,
          "balls of the Harnack check are not resolved by the mesh");
  HarnackResult out;
  const double area = unit_sphere_area(n);
  const double C2 = std::pow(2.0, 2.0 - yf.Lambda()) * area * (1.0 - std::pow(2.0, -n));
  out.C0 = 2.0 / C2;
  out.inf_inner = inf_inner;
  out.average = sum / count;
  out.lhs_term = Rs * yf.g_inverse(out.average);
  out.K_term = Rs * yf.g_inverse(out.C0 * K);
  out.sigma_hat = out.lhs_term > 0
                      ? std::min(1.0, (inf_inner + out.K_term) / out.lhs_term)
                      : 1.0;
  out.pass = out.sigma_hat > 0.0 && out.sigma_hat <= 1.0;
  return out;
}

double global_holder_quotient(const LatticeFunction& u, double alpha) {
  require(alpha > 0 && alpha <= 1, ErrorKind::Domain, "alpha must lie in (0,1]");
  const Grid& grid = u.grid();
  const std::size_t N = grid.size();
  const int n = grid.dim();
  constexpr std::size_t kBlocks = 32;
  std::vector<double> best(kBlocks, 0.0);
  std::vector<Point> pts(N);
  for (std::size_t i = 0; i < N; ++i) pts[i] = grid.node(i);
  parallel_blocks(kBlocks, [&](std::size_t b) {
    double m = 0.0;
    for (std::size_t i = b; i < N; i += kBlocks)
      for (std::size_t j = i + 1; j < N; ++j) {
        const double du = std::abs(u[i] - u[j]);
        if (du == 0.0) continue;
        m = std::max(m, du / std::pow(distance(pts[i], pts[j], n), alpha));
      }
    best[b] = m;
  });
  return *std::max_element(best.begin(), best.end());
}

}  // namespace gflap
