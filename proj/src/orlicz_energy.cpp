#include "gflap/orlicz_energy.hpp"

#include <cmath>

#include "gflap/discretization.hpp"
#include "gflap/errors.hpp"

namespace gflap {

namespace {

void require_zero_exterior(const LatticeFunction& u) {
  require(u.has_zero_exterior(), ErrorKind::Configuration,
          "energies are defined for functions with a zero exterior");
}

std::vector<std::size_t> all_nodes(const Grid& grid) {
  std::vector<std::size_t> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

double load(const LatticeFunction& u, const LatticeFunction& f) {
  require(u.grid().same_as(f.grid()), ErrorKind::Configuration,
          "u and f must share a grid");
  const auto w = trapezoid_weights(u.grid());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * f[i] * u[i];
  return total;
}

}  // namespace

Json EnergyBreakdown::to_json() const {
  return {{"gagliardo_modular", gagliardo_modular},
          {"load_term", load_term},
          {"total", total}};
}

std::vector<double> trapezoid_weights(const Grid& grid) {
  std::vector<double> w(grid.size(), grid.cell_volume());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto c = grid.coords(i);
    for (int a = 0; a < grid.dim(); ++a)
      if (c[a] == 0 || c[a] == grid.nodes(a) - 1) w[i] *= 0.5;
  }
  return w;
}

std::vector<std::size_t> interior_nodes(const Grid& grid) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!grid.on_boundary(i)) out.push_back(i);
  return out;
}

double modular(const YoungFunction& yf, const LatticeFunction& u, double s,
               double scale) {
  require_zero_exterior(u);
  require(scale > 0.0, ErrorKind::Domain, "scale must be positive");
  if (u.sup_abs() == 0.0) return 0.0;
  DiscreteModular mod(yf, u.grid(), all_nodes(u.grid()), s);
  return mod.value(u.values(), scale);
}

double luxemburg_seminorm(const YoungFunction& yf, const LatticeFunction& u,
                          double s) {
  require_zero_exterior(u);
  if (u.sup_abs() == 0.0) return 0.0;
  DiscreteModular mod(yf, u.grid(), all_nodes(u.grid()), s);
  auto m = [&](double lam) { return mod.value(u.values(), lam); };
  double lo = 1.0, hi = 1.0;
  while (m(lo) < 1.0) lo *= 0.5;
  while (m(hi) > 1.0) hi *= 2.0;
  // Bisection in log scale; the modular is continuous and decreasing.
  for (int k = 0; k < 200; ++k) {
    const double mid = std::sqrt(lo * hi);
    const double v = m(mid);
    if (std::abs(v - 1.0) <= 1e-10) return mid;
    if (v > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::sqrt(lo * hi);
}

EnergyBreakdown dirichlet_energy(const YoungFunction& yf,
                                 const LatticeFunction& u,
                                 const LatticeFunction& f, double s) {
  EnergyBreakdown e;
  e.gagliardo_modular = modular(yf, u, s);
  e.load_term = load(u, f);
  e.total = e.gagliardo_modular - e.load_term;
  return e;
}

std::vector<double> energy_gradient(const YoungFunction& yf,
                                    const LatticeFunction& u,
                                    const LatticeFunction& f, double s) {
  require_zero_exterior(u);
  require(u.grid().same_as(f.grid()), ErrorKind::Configuration,
          "u and f must share a grid");
  const Grid& grid = u.grid();
  DiscreteModular mod(yf, grid, all_nodes(grid), s);
  std::vector<double> grad(grid.size());
  mod.value_and_gradient(u.values(), grad);
  const auto w = trapezoid_weights(grid);
  std::vector<double> out;
  for (std::size_t i : interior_nodes(grid)) out.push_back(grad[i] - w[i] * f[i]);
  return out;
}

}  // namespace gflap
