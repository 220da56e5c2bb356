#include "gflap/config.hpp"

#include <fstream>
#include <memory>

#include "gflap/errors.hpp"

namespace gflap {

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Configuration,
          "cannot open config " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Configuration, path.string() + ": " + e.what());
  }
}

void require_known_keys(const Json& j, std::initializer_list<const char*> allowed,
                        const std::string& where) {
  require(j.is_object(), ErrorKind::Configuration, where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    require(ok, ErrorKind::Configuration, where + ": unknown key '" + key + "'");
  }
}

AnalyticFunction rhs_from_json(const Json& j, int dim,
                               const std::filesystem::path& base_dir) {
  if (j.is_number()) {
    const double v = j.get<double>();
    return {{{"id", "const"}, {"value", v}}, [v](const Point&) { return v; }};
  }
  require(j.is_object() && j.contains("kind"), ErrorKind::Configuration,
          "f needs a 'kind'");
  const std::string kind = j["kind"];
  if (kind == "const") {
    require(j.contains("value") && j["value"].is_number(), ErrorKind::Configuration,
            "f.kind=const needs a numeric 'value'");
    const double v = j["value"].get<double>();
    return {j, [v](const Point&) { return v; }};
  }
  if (kind == "analytic-id") {
    Json inner = j;
    inner.erase("kind");
    return analytic_from_json(inner, dim);
  }
  if (kind == "lattice-file") {
    require(j.contains("path") && j["path"].is_string(), ErrorKind::Configuration,
            "f.kind=lattice-file needs a 'path'");
    std::filesystem::path p = j["path"].get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    auto lat = std::make_shared<const LatticeFunction>(read_lattice(p));
    require(lat->dim() == dim, ErrorKind::Configuration,
            "lattice right-hand side has the wrong dimension");
    return {j, [lat](const Point& x) { return lat->evaluate(x); }};
  }
  fail(ErrorKind::Configuration, "unknown f.kind '" + kind + "'");
}

DirichletProblem problem_from_json(const Json& j,
                                   const std::filesystem::path& base_dir) {
  require(j.is_object(), ErrorKind::Configuration, "problem must be an object");
  for (const char* key : {"young", "s", "domain", "f"})
    require(j.contains(key), ErrorKind::Configuration,
            std::string("problem is missing '") + key + "'");
  require(j["s"].is_number(), ErrorKind::Configuration, "s must be a number");
  DirichletProblem prob;
  prob.yf = young_from_json(j["young"]);
  prob.s = j["s"].get<double>();
  prob.domain = domain_from_json(j["domain"]);
  prob.f = rhs_from_json(j["f"], prob.domain.dim, base_dir);
  if (j.contains("mesh_n")) {
    require(j["mesh_n"].is_number_integer(), ErrorKind::Configuration,
            "mesh_n must be an integer");
    prob.mesh_n = j["mesh_n"].get<int>();
  }
  prob.validate();
  return prob;
}

Json problem_to_json(const DirichletProblem& prob) {
  Json f = prob.f.descriptor;
  if (f.is_object() && !f.contains("kind")) f["kind"] = "analytic-id";
  return {{"young", young_to_json(prob.yf)},
          {"s", prob.s},
          {"domain", prob.domain.to_json()},
          {"f", f},
          {"mesh_n", prob.mesh_n}};
}

}  // namespace gflap
