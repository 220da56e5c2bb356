#include "acceptance.hpp"

#include <cstdio>
#include <map>

#include "criteria.hpp"
#include "gflap/config.hpp"
#include "gflap/errors.hpp"

namespace gflap::acceptance {

namespace {

struct Entry {
  const char* name;
  CriterionResult (*fn)(const Options&);
};

const std::map<int, Entry>& registry() {
  static const std::map<int, Entry> r = {
      {1, {"young-inequality-suite", c01_young_suite}},
      {2, {"conjugate-correctness", c02_conjugate}},
      {3, {"harmonic-profile-1d", c03_harmonic_profile}},
      {4, {"lieberman-ceiling", c04_lieberman_ceiling}},
      {5, {"solver-oracles", c05_solver_oracles}},
      {6, {"comparison-principle", c06_comparison}},
      {7, {"torsion-structure", c07_torsion_structure}},
      {8, {"boundary-growth", c08_boundary_growth}},
      {9, {"holder-regularity", c09_holder}},
      {10, {"scaling-identity", c10_scaling}},
      {11, {"exterior-modification", c11_exterior_identity}},
      {12, {"distance-residual", c12_distance_residual}},
  };
  return r;
}

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> ids;
  for (const auto& [id, e] : registry()) ids.push_back(id);
  return ids;
}

std::string criterion_name(int id) {
  const auto it = registry().find(id);
  require(it != registry().end(), ErrorKind::Configuration,
          "unknown criterion " + std::to_string(id));
  return it->second.name;
}

CriterionResult run_criterion(int id, const Options& opt) {
  const std::string name = criterion_name(id);
  Stopwatch clock;
  CriterionResult r;
  try {
    r = registry().at(id).fn(opt);
  } catch (const Error& e) {
    r.pass = false;
    r.summary = std::string("error (") + std::string(to_string(e.kind())) + "): " + e.what();
  } catch (const std::exception& e) {
    r.pass = false;
    r.summary = std::string("error: ") + e.what();
  }
  r.id = id;
  r.name = name;
  r.seconds = clock.seconds();
  return r;
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s  C%02d %-24s (%6.1f s)  ", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds);
  return head + r.summary;
}

AnalyticFunction constant_rhs(double value) {
  return rhs_from_json(Json{{"kind", "const"}, {"value", value}}, 1);
}

const DirichletProblem& torsion_problem(int mesh_n) {
  static std::map<int, DirichletProblem> cache;
  auto it = cache.find(mesh_n);
  if (it == cache.end()) {
    DirichletProblem prob;
    prob.yf = YoungFunction::power(3.0);
    prob.s = 0.5;
    prob.domain = Domain::ball(2, {0.0, 0.0}, 1.0);
    prob.f = constant_rhs(1.0);
    prob.mesh_n = mesh_n;
    it = cache.emplace(mesh_n, prob).first;
  }
  return it->second;
}

const DiscreteSolution& torsion_solution(int mesh_n) {
  static std::map<int, DiscreteSolution> cache;
  auto it = cache.find(mesh_n);
  if (it == cache.end()) it = cache.emplace(mesh_n, solve(torsion_problem(mesh_n), {})).first;
  return it->second;
}

}  // namespace gflap::acceptance
