#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gflap/report.hpp"

namespace gflap {

/// Points live in R^1 or R^2; the unused coordinate of a 1D point is 0.
using Point = std::array<double, 2>;
using ScalarField = std::function<double(const Point&)>;

double distance(const Point& a, const Point& b, int dim);

struct Box {
  int dim = 1;
  Point lo{0.0, 0.0};
  Point hi{0.0, 0.0};

  double extent(int axis) const { return hi[axis] - lo[axis]; }
  bool contains(const Point& x, double pad = 0.0) const;
  /// Distance from an interior point to the box boundary (0 outside).
  double inner_distance(const Point& x) const;
  /// Largest distance from x to any corner of the box.
  double farthest_corner(const Point& x) const;
};

/// Uniform grid of nodes over a box (box corners are nodes). Spacing is the
/// same along every axis. Node index is row-major with the last axis fastest.
class Grid {
 public:
  Grid() = default;
  Grid(Box box, std::array<int, 2> nodes);

  /// Grid with `mesh_n` nodes along the longest side of `box`; the other
  /// side gets as many nodes as fit at the same spacing (the box is grown
  /// symmetrically to make the spacing exact).
  static Grid covering(const Box& box, int mesh_n);
  static Grid interval(double lo, double hi, int n);
  static Grid square(double lo, double hi, int n);

  int dim() const { return box_.dim; }
  const Box& box() const { return box_; }
  std::array<int, 2> nodes() const { return n_; }
  int nodes(int axis) const { return n_[axis]; }
  double h() const { return h_; }
  double cell_volume() const { return dim() == 1 ? h_ : h_ * h_; }
  std::size_t size() const {
    return static_cast<std::size_t>(n_[0]) * (dim() == 2 ? n_[1] : 1);
  }

  std::size_t index(int i, int j = 0) const {
    return dim() == 1 ? static_cast<std::size_t>(i)
                      : static_cast<std::size_t>(i) * n_[1] + j;
  }
  std::array<int, 2> coords(std::size_t idx) const;
  Point node(std::size_t idx) const;
  bool on_boundary(std::size_t idx) const;

  /// Box covered by the node cells (node box grown by h/2).
  Box cell_region() const;

  bool same_as(const Grid& other) const;

 private:
  Box box_;
  std::array<int, 2> n_{1, 1};
  double h_ = 0.0;
};

/// Named analytic function with its JSON descriptor so it can be written out
/// and read back.
struct AnalyticFunction {
  Json descriptor;
  ScalarField fn;
};

/// Built-in analytic functions: const, gaussian, bump, power_profile
/// (x_+^s along axis 0), ball_distance_power (d_+^s for a ball).
AnalyticFunction analytic_from_json(const Json& j, int dim);

struct ZeroExterior {};
struct AnalyticExterior {
  AnalyticFunction function;
};
struct BoundedExterior {
  double M = 0.0;
};
using Exterior = std::variant<ZeroExterior, AnalyticExterior, BoundedExterior>;

/// Function sampled on a grid plus a rule for its values outside the grid.
class LatticeFunction {
 public:
  LatticeFunction() = default;
  LatticeFunction(Grid grid, std::vector<double> values,
                  Exterior exterior = ZeroExterior{});

  static LatticeFunction sample(const Grid& grid, const ScalarField& fn,
                                Exterior exterior = ZeroExterior{});
  static LatticeFunction zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  const Exterior& exterior() const { return exterior_; }
  int dim() const { return grid_.dim(); }

  double operator[](std::size_t idx) const { return values_[idx]; }

  bool has_zero_exterior() const {
    return std::holds_alternative<ZeroExterior>(exterior_);
  }

  /// Piecewise-(bi)linear interpolation inside the node box; outside it the
  /// exterior rule applies (throws for a bounded exterior).
  double evaluate(const Point& x) const;

  double sup_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
  Exterior exterior_;
};

/// Radii along the ray x + r*dir (|dir| = 1) where the function is not
/// smooth; appended to `out`.
using RayBreaks =
    std::function<void(const Point& x, const Point& dir, std::vector<double>& out)>;

/// What the operator quadratures see: a function on all of R^n, possibly
/// only trusted inside `known_box` (beyond it only |u| <= outside_bound is
/// known). 1D kinks and `ray_breaks` are used as quadrature breakpoints.
/// `support`, when set, is a box outside which the function vanishes.
/// `growth`, when set, is an exponent a with |u(x)| <= C (1 + |x|)^a.
struct Field {
  int dim = 1;
  ScalarField value;
  std::vector<double> kinks;
  RayBreaks ray_breaks;
  std::optional<Box> support;
  std::optional<Box> known_box;
  double outside_bound = 0.0;
  std::optional<double> growth;
};

Field as_field(const LatticeFunction& u);
Field analytic_field(int dim, ScalarField fn, std::vector<double> kinks = {},
                     std::optional<Box> support = std::nullopt);

Json box_to_json(const Box& box);
Box box_from_json(const Json& j);
Json exterior_to_json(const Exterior& ext);
Exterior exterior_from_json(const Json& j, int dim);

/// Header JSON at `header_path`, values in a sibling file (".csv" with one
/// value per line at 17 significant digits, or ".f64" raw little-endian).
void write_lattice(const LatticeFunction& u,
                   const std::filesystem::path& header_path,
                   const std::string& values_format = "csv");
LatticeFunction read_lattice(const std::filesystem::path& header_path);

}  // namespace gflap
