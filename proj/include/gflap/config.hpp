#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>

#include "gflap/dirichlet_solver.hpp"
#include "gflap/report.hpp"

namespace gflap {

/// Parses a JSON file; syntax errors become configuration errors.
Json load_json_file(const std::filesystem::path& path);

/// Configuration error unless every key of `j` is in `allowed`.
void require_known_keys(const Json& j, std::initializer_list<const char*> allowed,
                        const std::string& where);

/// Right-hand side: {"kind": "const", "value": v}, {"kind": "analytic-id",
/// "id": ..., ...} or {"kind": "lattice-file", "path": ...}. Relative paths
/// resolve against `base_dir`.
AnalyticFunction rhs_from_json(const Json& j, int dim,
                               const std::filesystem::path& base_dir = {});

/// {young, s, domain, f, mesh_n}; other keys are left to the caller.
DirichletProblem problem_from_json(const Json& j,
                                   const std::filesystem::path& base_dir = {});
Json problem_to_json(const DirichletProblem& prob);

}  // namespace gflap
