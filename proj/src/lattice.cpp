#include "gflap/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "gflap/errors.hpp"

namespace gflap {

double distance(const Point& a, const Point& b, int dim) {
  const double dx = a[0] - b[0];
  if (dim == 1) return std::abs(dx);
  const double dy = a[1] - b[1];
  return std::hypot(dx, dy);
}

bool Box::contains(const Point& x, double pad) const {
  for (int a = 0; a < dim; ++a)
    if (x[a] < lo[a] - pad || x[a] > hi[a] + pad) return false;
  return true;
}

double Box::inner_distance(const Point& x) const {
  double d = std::numeric_limits<double>::infinity();
  for (int a = 0; a < dim; ++a)
    d = std::min({d, x[a] - lo[a], hi[a] - x[a]});
  return std::max(d, 0.0);
}

double Box::farthest_corner(const Point& x) const {
  double sq = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double m = std::max(std::abs(x[a] - lo[a]), std::abs(x[a] - hi[a]));
    sq += m * m;
  }
  return std::sqrt(sq);
}

Grid::Grid(Box box, std::array<int, 2> nodes) : box_(box), n_(nodes) {
  require(box.dim == 1 || box.dim == 2, ErrorKind::Configuration,
          "grids are 1D or 2D");
  if (box.dim == 1) n_[1] = 1;
  require(n_[0] >= 2 && (box.dim == 1 || n_[1] >= 2), ErrorKind::Configuration,
          "a grid needs at least two nodes per axis");
  require(box.extent(0) > 0 && (box.dim == 1 || box.extent(1) > 0),
          ErrorKind::Configuration, "grid box is degenerate");
  h_ = box.extent(0) / (n_[0] - 1);
  if (box.dim == 2) {
    const double hy = box.extent(1) / (n_[1] - 1);
    require(std::abs(hy - h_) <= 1e-9 * h_, ErrorKind::Configuration,
            "grid spacing must be equal along both axes");
  }
}

Grid Grid::covering(const Box& box, int mesh_n) {
  require(mesh_n >= 3, ErrorKind::Configuration, "mesh_n must be >= 3");
  if (box.dim == 1) return Grid(box, {mesh_n, 1});
  const int longest = box.extent(0) >= box.extent(1) ? 0 : 1;
  const double h = box.extent(longest) / (mesh_n - 1);
  Box grown = box;
  std::array<int, 2> n{mesh_n, mesh_n};
  const int other = 1 - longest;
  n[other] = static_cast<int>(std::ceil(box.extent(other) / h - 1e-9)) + 1;
  const double pad = 0.5 * ((n[other] - 1) * h - box.extent(other));
  grown.lo[other] -= pad;
  grown.hi[other] += pad;
  return Grid(grown, n);
}

Grid Grid::interval(double lo, double hi, int n) {
  Box b;
  b.dim = 1;
  b.lo = {lo, 0.0};
  b.hi = {hi, 0.0};
  return Grid(b, {n, 1});
}

Grid Grid::square(double lo, double hi, int n) {
  Box b;
  b.dim = 2;
  b.lo = {lo, lo};
  b.hi = {hi, hi};
  return Grid(b, {n, n});
}

std::array<int, 2> Grid::coords(std::size_t idx) const {
  if (dim() == 1) return {static_cast<int>(idx), 0};
  return {static_cast<int>(idx / n_[1]), static_cast<int>(idx % n_[1])};
}

Point Grid::node(std::size_t idx) const {
  const auto c = coords(idx);
  Point p{box_.lo[0] + c[0] * h_, 0.0};
  if (dim() == 2) p[1] = box_.lo[1] + c[1] * h_;
  return p;
}

bool Grid::on_boundary(std::size_t idx) const {
  const auto c = coords(idx);
  if (c[0] == 0 || c[0] == n_[0] - 1) return true;
  return dim() == 2 && (c[1] == 0 || c[1] == n_[1] - 1);
}

Box Grid::cell_region() const {
  Box b = box_;
  for (int a = 0; a < dim(); ++a) {
    b.lo[a] -= 0.5 * h_;
    b.hi[a] += 0.5 * h_;
  }
  return b;
}

bool Grid::same_as(const Grid& other) const {
  if (dim() != other.dim() || n_ != other.n_) return false;
  for (int a = 0; a < dim(); ++a)
    if (std::abs(box_.lo[a] - other.box_.lo[a]) > 1e-12 * (1 + std::abs(box_.lo[a])) ||
        std::abs(box_.hi[a] - other.box_.hi[a]) > 1e-12 * (1 + std::abs(box_.hi[a])))
      return false;
  return true;
}

AnalyticFunction analytic_from_json(const Json& j, int dim) {
  require(j.is_object() && j.contains("id"), ErrorKind::Configuration,
          "analytic function needs an 'id'");
  const std::string id = j["id"];
  AnalyticFunction out;
  out.descriptor = j;
  auto center_of = [&](const Json& jj) {
    Point c{0.0, 0.0};
    if (jj.contains("center"))
      for (int a = 0; a < dim && a < static_cast<int>(jj["center"].size()); ++a)
        c[a] = jj["center"][a].get<double>();
    return c;
  };
  if (id == "const") {
    const double v = j.value("value", 1.0);
    out.fn = [v](const Point&) { return v; };
  } else if (id == "gaussian") {
    const double amp = j.value("amplitude", 1.0);
    const double width = j.value("width", 0.25);
    const Point c = center_of(j);
    out.fn = [=](const Point& x) {
      const double r = distance(x, c, dim);
      return amp * std::exp(-0.5 * r * r / (width * width));
    };
  } else if (id == "bump") {
    // (1 - |x-c|^2/r^2)_+^k, C^{k-1} with compact support.
    const double amp = j.value("amplitude", 1.0);
    const double radius = j.value("radius", 0.5);
    const int k = j.value("power", 3);
    const Point c = center_of(j);
    out.fn = [=](const Point& x) {
      const double r = distance(x, c, dim) / radius;
      return r >= 1.0 ? 0.0 : amp * std::pow(1.0 - r * r, k);
    };
  } else if (id == "power_profile") {
    const double s = j.at("s").get<double>();
    out.fn = [s](const Point& x) { return x[0] > 0 ? std::pow(x[0], s) : 0.0; };
  } else if (id == "ball_distance_power") {
    const double s = j.at("s").get<double>();
    const double R = j.value("R", 1.0);
    const Point c = center_of(j);
    out.fn = [=](const Point& x) {
      const double d = R - distance(x, c, dim);
      return d > 0 ? std::pow(d, s) : 0.0;
    };
  } else {
    fail(ErrorKind::Configuration, "unknown analytic function id '" + id + "'");
  }
  return out;
}

LatticeFunction::LatticeFunction(Grid grid, std::vector<double> values,
                                 Exterior exterior)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      exterior_(std::move(exterior)) {
  require(values_.size() == grid_.size(), ErrorKind::Configuration,
          "lattice value count does not match the grid");
  for (double v : values_)
    require(std::isfinite(v), ErrorKind::Configuration,
            "lattice values must be finite");
}

LatticeFunction LatticeFunction::sample(const Grid& grid, const ScalarField& fn,
                                        Exterior exterior) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = fn(grid.node(i));
  return LatticeFunction(grid, std::move(values), std::move(exterior));
}

LatticeFunction LatticeFunction::zeros(const Grid& grid) {
  return LatticeFunction(grid, std::vector<double>(grid.size(), 0.0));
}

double LatticeFunction::evaluate(const Point& x) const {
  const Box& box = grid_.box();
  if (!box.contains(x, 1e-12 * grid_.h())) {
    return std::visit(
        [&](const auto& ext) -> double {
          using T = std::decay_t<decltype(ext)>;
          if constexpr (std::is_same_v<T, ZeroExterior>) {
            return 0.0;
          } else if constexpr (std::is_same_v<T, AnalyticExterior>) {
            return ext.function.fn(x);
          } else {
            fail(ErrorKind::InsufficientExteriorData,
                 "lattice function has only a bound outside its box");
          }
        },
        exterior_);
  }
  const double h = grid_.h();
  auto locate = [&](int axis, int& cell, double& frac) {
    const double pos = (x[axis] - box.lo[axis]) / h;
    cell = std::clamp(static_cast<int>(std::floor(pos)), 0, grid_.nodes(axis) - 2);
    frac = std::clamp(pos - cell, 0.0, 1.0);
  };
  int i = 0;
  double fx = 0.0;
  locate(0, i, fx);
  if (dim() == 1) return (1.0 - fx) * values_[i] + fx * values_[i + 1];
  int j = 0;
  double fy = 0.0;
  locate(1, j, fy);
  const double v00 = values_[grid_.index(i, j)];
  const double v10 = values_[grid_.index(i + 1, j)];
  const double v01 = values_[grid_.index(i, j + 1)];
  const double v11 = values_[grid_.index(i + 1, j + 1)];
  return (1 - fx) * (1 - fy) * v00 + fx * (1 - fy) * v10 + (1 - fx) * fy * v01 +
         fx * fy * v11;
}

double LatticeFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field as_field(const LatticeFunction& u) {
  Field f;
  f.dim = u.dim();
  auto shared = std::make_shared<const LatticeFunction>(u);
  f.value = [shared](const Point& x) { return shared->evaluate(x); };
  if (u.dim() == 1)
    for (std::size_t i = 0; i < u.grid().size(); ++i)
      f.kinks.push_back(u.grid().node(i)[0]);
  std::visit(
      [&](const auto& ext) {
        using T = std::decay_t<decltype(ext)>;
        if constexpr (std::is_same_v<T, ZeroExterior>) {
          f.support = u.grid().box();
        } else if constexpr (std::is_same_v<T, BoundedExterior>) {
          f.known_box = u.grid().box();
          f.outside_bound = ext.M;
        }
      },
      u.exterior());
  return f;
}

Field analytic_field(int dim, ScalarField fn, std::vector<double> kinks,
                     std::optional<Box> support) {
  Field f;
  f.dim = dim;
  f.value = std::move(fn);
  f.kinks = std::move(kinks);
  f.support = support;
  return f;
}

Json box_to_json(const Box& box) {
  Json lo = Json::array(), hi = Json::array();
  for (int a = 0; a < box.dim; ++a) {
    lo.push_back(box.lo[a]);
    hi.push_back(box.hi[a]);
  }
  return {{"lo", lo}, {"hi", hi}};
}

Box box_from_json(const Json& j) {
  require(j.contains("lo") && j.contains("hi") && j["lo"].is_array() &&
              j["lo"].size() == j["hi"].size() &&
              (j["lo"].size() == 1 || j["lo"].size() == 2),
          ErrorKind::Configuration, "box needs 'lo' and 'hi' arrays of length 1 or 2");
  Box b;
  b.dim = static_cast<int>(j["lo"].size());
  for (int a = 0; a < b.dim; ++a) {
    b.lo[a] = j["lo"][a].get<double>();
    b.hi[a] = j["hi"][a].get<double>();
  }
  return b;
}

Json exterior_to_json(const Exterior& ext) {
  return std::visit(
      [](const auto& e) -> Json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, ZeroExterior>)
          return {{"kind", "zero"}};
        else if constexpr (std::is_same_v<T, AnalyticExterior>)
          return {{"kind", "analytic"}, {"function", e.function.descriptor}};
        else
          return {{"kind", "bounded"}, {"M", e.M}};
      },
      ext);
}

Exterior exterior_from_json(const Json& j, int dim) {
  const std::string kind = j.value("kind", "zero");
  if (kind == "zero") return ZeroExterior{};
  if (kind == "bounded") return BoundedExterior{j.at("M").get<double>()};
  if (kind == "analytic")
    return AnalyticExterior{analytic_from_json(j.at("function"), dim)};
  fail(ErrorKind::Configuration, "unknown exterior kind '" + kind + "'");
}

namespace {

std::filesystem::path values_path(const std::filesystem::path& header,
                                  const std::string& format) {
  std::filesystem::path p = header;
  p.replace_extension(format == "csv" ? ".values.csv" : ".values.f64");
  return p;
}

}  // namespace

void write_lattice(const LatticeFunction& u,
                   const std::filesystem::path& header_path,
                   const std::string& values_format) {
  require(values_format == "csv" || values_format == "f64",
          ErrorKind::Configuration, "values format must be csv or f64");
  const Grid& g = u.grid();
  Json nodes = Json::array();
  for (int a = 0; a < g.dim(); ++a) nodes.push_back(g.nodes(a));
  const auto vpath = values_path(header_path, values_format);
  Json header = {{"format", "gflap-lattice"},
                 {"version", 1},
                 {"dim", g.dim()},
                 {"box", box_to_json(g.box())},
                 {"nodes", nodes},
                 {"h", g.h()},
                 {"order", "row-major, last axis fastest"},
                 {"exterior", exterior_to_json(u.exterior())},
                 {"values_format", values_format},
                 {"values_file", vpath.filename().string()}};
  {
    std::ofstream out(header_path);
    require(static_cast<bool>(out), ErrorKind::Configuration,
            "cannot write " + header_path.string());
    out << header.dump(2) << "\n";
  }
  if (values_format == "csv") {
    std::ofstream out(vpath);
    out << std::setprecision(17);
    for (double v : u.values()) out << v << "\n";
  } else {
    static_assert(std::endian::native == std::endian::little,
                  "f64 value files are little-endian");
    std::ofstream out(vpath, std::ios::binary);
    out.write(reinterpret_cast<const char*>(u.values().data()),
              static_cast<std::streamsize>(u.values().size() * sizeof(double)));
  }
}

LatticeFunction read_lattice(const std::filesystem::path& header_path) {
  std::ifstream in(header_path);
  require(static_cast<bool>(in), ErrorKind::Configuration,
          "cannot read " + header_path.string());
  Json header;
  try {
    in >> header;
  } catch (const Json::exception& e) {
    fail(ErrorKind::Configuration, "malformed lattice header: " + std::string(e.what()));
  }
  require(header.value("format", "") == "gflap-lattice", ErrorKind::Configuration,
          "not a gflap lattice header");
  const Box box = box_from_json(header.at("box"));
  std::array<int, 2> n{1, 1};
  for (int a = 0; a < box.dim; ++a) n[a] = header.at("nodes")[a].get<int>();
  Grid grid(box, n);
  const std::string format = header.value("values_format", "csv");
  const auto vpath = header_path.parent_path() / header.at("values_file").get<std::string>();
  std::vector<double> values;
  if (format == "csv") {
    std::ifstream vin(vpath);
    require(static_cast<bool>(vin), ErrorKind::Configuration,
            "cannot read " + vpath.string());
    std::string line;
    while (std::getline(vin, line))
      if (!line.empty()) values.push_back(std::stod(line));
  } else {
    std::ifstream vin(vpath, std::ios::binary);
    require(static_cast<bool>(vin), ErrorKind::Configuration,
            "cannot read " + vpath.string());
    values.resize(grid.size());
    vin.read(reinterpret_cast<char*>(values.data()),
             static_cast<std::streamsize>(values.size() * sizeof(double)));
    require(vin.gcount() == static_cast<std::streamsize>(values.size() * sizeof(double)),
            ErrorKind::Configuration, "short f64 value file");
  }
  return LatticeFunction(grid, std::move(values),
                         exterior_from_json(header.value("exterior", Json::object()), box.dim));
}

}  // namespace gflap
