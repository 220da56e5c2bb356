#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gflap/lattice.hpp"
#include "gflap/young.hpp"

namespace gflap {

/// Nodal quadrature of the Gagliardo-Orlicz modular
///
///   M(u) = \iint_{R^n x R^n} G((u(x) - u(y)) / |x-y|^s) dx dy / |x-y|^n
///
/// for a grid function that vanishes outside an "active" node set. The
/// function is piecewise constant on node cells (side h) and zero outside the
/// cell region. Contributions:
///   - distinct cell pairs: midpoint rule, weight h^{2n} / |x_i - x_j|^n;
///   - a cell with itself: one level of 4x subdivision, with u locally linear
///     (central-difference gradient);
///   - active cell against everything beyond the cell region: exact radial
///     integral, angular quadrature in 2D.
/// Pairs of inactive nodes carry zero and are skipped. For power-series
/// Young functions every active/inactive interaction collapses to
/// per-node coefficients, so one evaluation costs O(F^2) for F active nodes.
class DiscreteModular {
 public:
  DiscreteModular(YoungFunction yf, Grid grid, std::vector<std::size_t> active,
                  double s, bool include_outer = true);

  const Grid& grid() const { return grid_; }
  const std::vector<std::size_t>& active() const { return active_; }
  std::size_t size() const { return active_.size(); }
  double s() const { return s_; }
  const YoungFunction& young() const { return yf_; }

  /// Modular of u/scale; `x` holds the values on the active nodes.
  double value(std::span<const double> x, double scale = 1.0) const;

  /// Modular at scale 1 and its gradient with respect to the active values.
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const;

  /// Directional derivative in direction `dir` (both on active nodes).
  double directional(std::span<const double> x,
                     std::span<const double> dir) const;

  std::vector<double> gather(std::span<const double> full) const;
  std::vector<double> scatter(std::span<const double> x) const;

 private:
  struct SelfOffset {
    double kx, ky;   // (h/4)^{1-s} k / |k|^s
    double weight;   // multiplicity * (h/4)^{2n} / |k h/4|^n
  };

  template <class Kernel>
  double evaluate(const Kernel& kernel, std::span<const double> x,
                  double inv_scale, double* grad) const;

  double exterior_energy(std::size_t p, double v) const;
  double exterior_slope(std::size_t p, double v) const;

  YoungFunction yf_;
  Grid grid_;
  std::vector<std::size_t> active_;
  double s_;
  bool include_outer_;

  std::vector<std::array<int, 2>> coords_;
  std::vector<double> rs_table_;  // |offset|^{-s}
  std::vector<double> w_table_;   // 2 h^{2n} |offset|^{-n}
  int stride_ = 1;

  // Power series: T[p * terms + m]; see the .cpp for the exact definition.
  std::vector<double> ext_coeff_;
  // Custom Young functions: inactive nodes and outer angular samples.
  std::vector<std::size_t> inactive_;
  std::vector<std::vector<std::pair<double, double>>> outer_samples_;

  // Every cell that is active or touches an active cell; slots are -1 for
  // inactive (zero) values. This makes the modular independent of whether
  // zero-valued nodes are declared active.
  struct SelfCell {
    std::ptrdiff_t own;
    std::array<std::ptrdiff_t, 4> nb;  // west, east, south, north
  };
  std::vector<SelfCell> self_cells_;
  std::vector<SelfOffset> self_offsets_;

  std::vector<std::size_t> block_starts_;
};

/// Integral over the complement of `region` (a box containing x) of
/// |x - y|^{-n - q}; that is, the angular integral of rho(theta)^{-q} / q.
/// Returned without the 1/q factor: sum over directions of rho^{-q} dtheta.
double outer_angular_moment(const Box& region, const Point& x, double q);

/// Quadrature samples (weight, rho) of the angular measure over directions,
/// with rho the distance from x to the boundary of `region` along each one.
std::vector<std::pair<double, double>> outer_angular_samples(const Box& region,
                                                             const Point& x);

}  // namespace gflap
