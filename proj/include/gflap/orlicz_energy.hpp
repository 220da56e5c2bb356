#pragma once

#include <vector>

#include "gflap/lattice.hpp"
#include "gflap/report.hpp"
#include "gflap/young.hpp"

namespace gflap {

struct EnergyBreakdown {
  double gagliardo_modular = 0.0;
  double load_term = 0.0;
  double total = 0.0;  // gagliardo_modular - load_term

  Json to_json() const;
};

/// Trapezoid weights of the grid (boundary nodes carry half weight per axis).
std::vector<double> trapezoid_weights(const Grid& grid);

/// ∬ G(D_s u / scale) dμ over R^n x R^n for u with a zero exterior.
double modular(const YoungFunction& yf, const LatticeFunction& u, double s,
               double scale = 1.0);

/// Smallest scale with modular <= 1, by bisection to |modular - 1| <= 1e-8.
double luxemburg_seminorm(const YoungFunction& yf, const LatticeFunction& u,
                          double s);

/// J(u) = modular(u) - ∫ f u, the load by the trapezoid rule.
EnergyBreakdown dirichlet_energy(const YoungFunction& yf,
                                 const LatticeFunction& u,
                                 const LatticeFunction& f, double s);

/// ∂J/∂u_i for every interior (non-boundary) node, in grid order.
std::vector<double> energy_gradient(const YoungFunction& yf,
                                    const LatticeFunction& u,
                                    const LatticeFunction& f, double s);

/// Indices of the interior nodes, the order used by energy_gradient.
std::vector<std::size_t> interior_nodes(const Grid& grid);

}  // namespace gflap
