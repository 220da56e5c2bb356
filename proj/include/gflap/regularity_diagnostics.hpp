#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gflap/lattice.hpp"
#include "gflap/nonlocal_operator.hpp"
#include "gflap/report.hpp"
#include "gflap/young.hpp"

namespace gflap {

struct DiagnosticEntry {
  std::string name;
  Json value;
  Json params = Json::object();   // mesh, radii, band, tolerances used
  std::optional<bool> pass;       // unset: informational
};

struct DiagnosticsReport {
  std::vector<DiagnosticEntry> entries;
  std::vector<std::string> warnings;

  void add(DiagnosticEntry e) { entries.push_back(std::move(e)); }
  const DiagnosticEntry* find(const std::string& name) const;
  bool pass() const;
  Json to_json() const;
};

Json grid_to_json(const Grid& grid);

/// (r, value) series, written as CSV with columns "r,value".
using Series = std::vector<std::pair<double, double>>;
void write_series_csv(const std::filesystem::path& path, const Series& series,
                      const std::string& x_name = "r",
                      const std::string& y_name = "value");

/// Geometric radii from 3h up to r_max (ascending).
std::vector<double> default_radii(double h, double r_max, int count = 10);

/// Geometric radii over the middle decade of [3h, r_max]; the whole range
/// when it spans a decade or less.
std::vector<double> middle_decade_radii(double h, double r_max, int count = 10);

/// osc over the grid nodes of each closed ball B_r(x0). Radii whose ball
/// holds no node are dropped and reported in `warnings`.
Series oscillation_profile(const LatticeFunction& u, const Point& x0,
                           const std::vector<double>& radii,
                           std::vector<std::string>* warnings = nullptr);

struct HolderFit {
  double alpha = 0.0;
  double C = 0.0;
  double residual = 0.0;  // RMS of the log-log residuals
  std::size_t points = 0;
};

/// Least squares log osc = alpha log r + log C over points with osc > 0.
HolderFit fit_holder_exponent(const Series& profile);

struct BoundaryRatio {
  double sup_ratio = 0.0;
  double inf_ratio = 0.0;
  std::size_t samples = 0;
  Series series;  // (d, |u|/d^s), ascending in d
};

BoundaryRatio boundary_ratio_profile(const LatticeFunction& u,
                                     const std::function<double(const Point&)>& d,
                                     double s, double d_lo, double d_hi);

struct DistanceResidual {
  double sup = 0.0;           // at the smallest cutoff
  double sup_previous = 0.0;  // at the cutoff before it
  double sup_extrapolated = 0.0;
  double relative_change = 0.0;
  Series samples;             // (d, value at the smallest cutoff)
};

/// |(-Δ_g)^s d_+^s| at points of the band d in [d_lo, d_hi] on a radius of
/// the ball B_R(center).
DistanceResidual distance_profile_residual(const YoungFunction& yf, int dim,
                                           const Point& center, double R,
                                           double s, double d_lo, double d_hi,
                                           const QuadratureSpec& q,
                                           int n_points = 8);

struct HarnackResult {
  double sigma_hat = 1.0;
  double inf_inner = 0.0;   // inf over B_{R/4}
  double average = 0.0;     // mean of g(R^{-s} u) over B_R \ B_{R/2}
  double C0 = 0.0;
  double lhs_term = 0.0;    // R^s g^{-1}(average)
  double K_term = 0.0;      // R^s g^{-1}(C0 K)
  bool pass = true;
};

/// Largest sigma in (0,1] with inf_{B_{R/4}} u >= sigma R^s g^{-1}(avg) -
/// R^s g^{-1}(C0 K), C0 = 2 / (2^{2-Λ} nω_n (1 - 2^{-n})).
HarnackResult weak_harnack_check(const YoungFunction& yf,
                                 const LatticeFunction& u, double K, double R,
                                 double s, const Point& x0 = {0.0, 0.0});

/// sup over node pairs of |u(x) - u(y)| / |x - y|^alpha.
double global_holder_quotient(const LatticeFunction& u, double alpha);

}  // namespace gflap
