#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "gflap/config.hpp"
#include "gflap/errors.hpp"

using namespace gflap;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "gflap_unit_config";
  std::filesystem::create_directories(dir);
  return dir;
}

Json torsion_json() {
  return {{"young", {{"family", "power"}, {"params", {{"p", 3.0}}}}},
          {"s", 0.5},
          {"domain", {{"kind", "ball"}, {"dim", 2}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
          {"f", 1.0},
          {"mesh_n", 24}};
}

}  // namespace

TEST_CASE("problem round trip") {
  const DirichletProblem prob = problem_from_json(torsion_json());
  CHECK(prob.mesh_n == 24);
  CHECK(prob.domain.kind == Domain::Kind::Ball);
  CHECK(prob.f.fn({0.3, 0.1}) == 1.0);
  const DirichletProblem back = problem_from_json(problem_to_json(prob));
  CHECK(back.s == prob.s);
  CHECK(back.yf.g(2.0) == prob.yf.g(2.0));
}

TEST_CASE("configuration errors") {
  Json j = torsion_json();
  j.erase("young");
  CHECK_THROWS_AS(problem_from_json(j), Error);
  j = torsion_json();
  j["s"] = 1.5;
  CHECK_THROWS_AS(problem_from_json(j), Error);
  CHECK_THROWS_AS(require_known_keys({{"a", 1}, {"b", 2}}, {"a"}, "test"), Error);
  CHECK_NOTHROW(require_known_keys({{"a", 1}}, {"a", "b"}, "test"));
  CHECK_THROWS_AS(rhs_from_json({{"kind", "spline"}}, 1), Error);
  const auto bad = scratch_dir() / "bad.json";
  std::ofstream(bad) << "{ not json";
  try {
    load_json_file(bad);
    FAIL("expected a configuration error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Configuration);
  }
}

TEST_CASE("right-hand side kinds") {
  CHECK(rhs_from_json(2.5, 1).fn({0.1, 0.0}) == 2.5);
  CHECK(rhs_from_json({{"kind", "const"}, {"value", -1.0}}, 1).fn({0.1, 0.0}) == -1.0);
  const AnalyticFunction g =
      rhs_from_json({{"kind", "analytic-id"}, {"id", "gaussian"}, {"width", 0.5}}, 2);
  CHECK(g.fn({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(g.fn({0.5, 0.0}) < 1.0);
}

TEST_CASE("lattice files round trip and drive a right-hand side") {
  const Grid grid = Grid::square(-1.0, 1.0, 9);
  const LatticeFunction u =
      LatticeFunction::sample(grid, [](const Point& x) { return x[0] + 2.0 * x[1] + 0.1; });
  const auto dir = scratch_dir();
  for (const char* format : {"csv", "f64"}) {
    const auto header = dir / (std::string("lattice_") + format + ".json");
    write_lattice(u, header, format);
    const LatticeFunction back = read_lattice(header);
    CHECK(back.grid().same_as(grid));
    CHECK(back.values() == u.values());
  }
  const AnalyticFunction f =
      rhs_from_json({{"kind", "lattice-file"}, {"path", "lattice_csv.json"}}, 2, dir);
  CHECK(f.fn({0.25, 0.5}) == doctest::Approx(0.25 + 1.0 + 0.1).epsilon(1e-14));
}
