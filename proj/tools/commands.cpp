#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "gflap/config.hpp"
#include "gflap/dirichlet_solver.hpp"
#include "gflap/errors.hpp"
#include "gflap/nonlocal_operator.hpp"
#include "gflap/orlicz_energy.hpp"
#include "gflap/regularity_diagnostics.hpp"
#include "gflap/young.hpp"

namespace fs = std::filesystem;

namespace gflap::cli {
namespace {

constexpr int kCsvVersion = 1;

Json load_config(const RunContext& ctx) {
  const Json j = load_json_file(ctx.config);
  require(j.is_object(), ErrorKind::Configuration, "configuration must be a JSON object");
  return j;
}

fs::path config_dir(const RunContext& ctx) { return ctx.config.parent_path(); }

fs::path prepare_out(const RunContext& ctx) {
  fs::create_directories(ctx.out);
  return ctx.out;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::Configuration, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json csv_schema(std::initializer_list<const char*> columns) {
  return {{"version", kCsvVersion}, {"columns", Json(columns)}};
}

double number_in(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  require(j[key].is_number(), ErrorKind::Configuration, std::string(key) + " must be a number");
  return j[key].get<double>();
}

Point point_in(const Json& j, const char* key, const Point& fallback) {
  if (!j.contains(key)) return fallback;
  require(j[key].is_array() && !j[key].empty() && j[key].size() <= 2,
          ErrorKind::Configuration, std::string(key) + " must be a point");
  Point p{0.0, 0.0};
  for (std::size_t a = 0; a < j[key].size(); ++a) p[a] = j[key][a].get<double>();
  return p;
}

Json point_json(const Point& p, int dim) {
  return dim == 1 ? Json{p[0]} : Json{p[0], p[1]};
}

// ---------------------------------------------------------------- diagnostics

Json fit_json(const HolderFit& f) {
  return {{"alpha", f.alpha}, {"C", f.C}, {"residual", f.residual}, {"points", f.points}};
}

DiagnosticsReport run_diagnostics(const DirichletProblem& prob, const LatticeFunction& u,
                                  const Json& selection, const fs::path& out, Json& csv) {
  require(selection.is_object(), ErrorKind::Configuration, "diagnostics must be an object");
  require_known_keys(selection, {"holder", "boundary_ratio", "harnack", "global_holder", "tails"},
                     "diagnostics");
  DiagnosticsReport rep;
  const Grid& grid = u.grid();
  const int dim = grid.dim();
  const double h = grid.h();
  const double s = prob.s;
  const double inradius = prob.domain.inradius();
  const Box bb = prob.domain.bounding_box();
  const Point middle{0.5 * (bb.lo[0] + bb.hi[0]), dim == 2 ? 0.5 * (bb.lo[1] + bb.hi[1]) : 0.0};
  const bool zero = u.sup_abs() == 0.0;
  auto guarded = [&](const char* name, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      rep.warnings.push_back(std::string(name) + ": " + e.what());
      rep.add({name, nullptr, Json::object(), std::nullopt});
    }
  };

  if (selection.contains("holder")) {
    const Json& c = selection["holder"];
    require_known_keys(c, {"center", "r_max", "window", "slack"}, "diagnostics.holder");
    const Point center = point_in(c, "center", {bb.hi[0], middle[1]});
    const double r_max = number_in(c, "r_max", inradius);
    const std::string window = c.value("window", "middle_decade");
    require(window == "middle_decade" || window == "full", ErrorKind::Configuration,
            "holder.window must be middle_decade or full");
    const double slack = number_in(c, "slack", 0.05);
    guarded("holder_fit", [&] {
      const auto radii = window == "full" ? default_radii(h, r_max) : middle_decade_radii(h, r_max);
      if (radii.back() < 9.99 * radii.front())
        rep.warnings.push_back("holder_fit: radii span less than a decade; the mesh is too coarse "
                               "to separate boundary from interior scales");
      const Series osc = oscillation_profile(u, center, radii, &rep.warnings);
      write_series_csv(out / "osc_profile.csv", osc, "r", "osc");
      csv["osc_profile.csv"] = csv_schema({"r", "osc"});
      Json params = {{"center", point_json(center, dim)}, {"radii", radii},
                     {"window", window}, {"alpha_max", s + slack}};
      if (zero) {
        rep.add({"holder_fit", fit_json(HolderFit{}), params, std::nullopt});
        return;
      }
      const HolderFit fit = fit_holder_exponent(osc);
      rep.add({"holder_fit", fit_json(fit), params, fit.alpha > 0.0 && fit.alpha <= s + slack});
    });
  }

  if (selection.contains("boundary_ratio")) {
    const Json& c = selection["boundary_ratio"];
    require_known_keys(c, {"d_lo", "d_hi"}, "diagnostics.boundary_ratio");
    const double d_lo = number_in(c, "d_lo", 4.0 * h);
    const double d_hi = number_in(c, "d_hi", std::max(0.25 * inradius, 8.0 * h));
    guarded("boundary_ratio", [&] {
      const BoundaryRatio br = boundary_ratio_profile(
          u, [&](const Point& x) { return prob.domain.signed_distance(x); }, s, d_lo, d_hi);
      write_series_csv(out / "boundary_ratio.csv", br.series, "d", "ratio");
      csv["boundary_ratio.csv"] = csv_schema({"d", "ratio"});
      rep.add({"boundary_ratio",
               {{"sup_ratio", br.sup_ratio}, {"inf_ratio", br.inf_ratio}, {"samples", br.samples}},
               {{"d_lo", d_lo}, {"d_hi", d_hi}},
               std::nullopt});
    });
  }

  if (selection.contains("harnack")) {
    const Json& c = selection["harnack"];
    require_known_keys(c, {"center", "R", "K"}, "diagnostics.harnack");
    const Point center = point_in(c, "center", middle);
    const double R = number_in(c, "R", 0.5 * inradius);
    double K_default = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      K_default = std::max(K_default, std::abs(prob.f.fn(grid.node(i))));
    const double K = number_in(c, "K", K_default);
    guarded("weak_harnack", [&] {
      const HarnackResult hr = weak_harnack_check(prob.yf, u, K, R, s, center);
      rep.add({"weak_harnack",
               {{"sigma_hat", hr.sigma_hat}, {"inf_inner", hr.inf_inner}, {"average", hr.average},
                {"C0", hr.C0}, {"lhs_term", hr.lhs_term}, {"K_term", hr.K_term}},
               {{"center", point_json(center, dim)}, {"R", R}, {"K", K}},
               hr.pass});
    });
  }

  if (selection.contains("global_holder")) {
    const Json& c = selection["global_holder"];
    require_known_keys(c, {"alpha"}, "diagnostics.global_holder");
    const double alpha = number_in(c, "alpha", s);
    guarded("global_holder_quotient", [&] {
      rep.add({"global_holder_quotient", global_holder_quotient(u, alpha), {{"alpha", alpha}},
               std::nullopt});
    });
  }

  if (selection.contains("tails")) {
    const Json& c = selection["tails"];
    require_known_keys(c, {"center", "R"}, "diagnostics.tails");
    const Point center = point_in(c, "center", middle);
    const double R = number_in(c, "R", 0.5 * inradius);
    guarded("tails", [&] {
      rep.add({"tails",
               {{"g", tail(prob.yf, u, center, R, s, TailMode::G)},
                {"p_plus", tail(prob.yf, u, center, R, s, TailMode::PPlus)},
                {"p_minus", tail(prob.yf, u, center, R, s, TailMode::PMinus)}},
               {{"center", point_json(center, dim)}, {"R", R}},
               std::nullopt});
    });
  }
  return rep;
}

Json all_diagnostics() {
  const Json empty = Json::object();
  return {{"holder", empty}, {"boundary_ratio", empty}, {"harnack", empty},
          {"global_holder", empty}, {"tails", empty}};
}

int write_diagnostics(const DirichletProblem& prob, const LatticeFunction& u, const Json& selection,
                      const fs::path& out, const Json& source) {
  Json csv = Json::object();
  const DiagnosticsReport rep = run_diagnostics(prob, u, selection, out, csv);
  Json j = rep.to_json();
  j["command"] = "diagnose";
  j["source"] = source;
  j["grid"] = grid_to_json(u.grid());
  j["csv"] = csv;
  write_json(out / "diagnostics.json", j);
  for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const auto& e : rep.entries)
    std::printf("%-24s %s%s\n", e.name.c_str(), e.value.dump().c_str(),
                e.pass ? (*e.pass ? "  pass" : "  FAIL") : "");
  return rep.pass() ? kPass : kVerificationFailure;
}

// ---------------------------------------------------------------- solve

struct SolveOutcome {
  DirichletProblem problem;
  DiscreteSolution solution;
};

SolveOutcome solve_and_write(const Json& j, const fs::path& base_dir, const fs::path& out) {
  require_known_keys(j, {"young", "s", "domain", "f", "mesh_n", "solver", "diagnostics",
                         "values_format"},
                     "solve");
  SolveOutcome r{problem_from_json(j, base_dir), {}};
  const SolverConfig cfg = solver_config_from_json(j.value("solver", Json()));
  cfg.validate();
  const std::string format = j.value("values_format", "csv");
  r.solution = solve(r.problem, cfg);
  const DiscreteSolution& sol = r.solution;

  write_lattice(sol.u, out / "solution.json", format);
  const LatticeFunction f = LatticeFunction::sample(sol.u.grid(), r.problem.f.fn);
  const EnergyBreakdown energy = dirichlet_energy(r.problem.yf, sol.u, f, r.problem.s);

  std::ofstream trace(out / "energy_trace.csv");
  trace << "iteration,energy\n" << std::setprecision(17);
  for (std::size_t k = 0; k < sol.energy_trace.size(); ++k)
    trace << k << ',' << sol.energy_trace[k] << '\n';

  const Json record = {{"command", "solve"},
                       {"problem", problem_to_json(r.problem)},
                       {"solver", solver_config_to_json(cfg)},
                       {"grid", grid_to_json(sol.u.grid())},
                       {"run", sol.run_record()},
                       {"energy", energy.to_json()},
                       {"sup_abs", sol.u.sup_abs()},
                       {"solution_file", "solution.json"},
                       {"csv", {{"energy_trace.csv", csv_schema({"iteration", "energy"})}}}};
  write_json(out / "run.json", record);
  std::printf("%s after %d iterations, grad norm %.3e, sup|u| %.6g, energy %.10g\n",
              sol.converged ? "converged" : "NOT converged", sol.iterations, sol.final_grad_norm,
              sol.u.sup_abs(), energy.total);
  return r;
}

}  // namespace

int cmd_verify_young(const RunContext& ctx) {
  const Json j = load_config(ctx);
  require_known_keys(j, {"young", "samples", "rtol", "conjugate_grid", "gap_tol"}, "verify-young");
  require(j.contains("young"), ErrorKind::Configuration, "verify-young needs 'young'");
  const YoungFunction yf = young_from_json(j["young"]);
  const auto samples = j.value("samples", std::int64_t{100000});
  const int grid = j.value("conjugate_grid", 200);
  require(samples > 0 && grid >= 2, ErrorKind::Configuration,
          "samples and conjugate_grid must be positive");
  const Report suite = check_inequality_suite(yf, samples, ctx.seed, number_in(j, "rtol", 1e-10));
  const Report conj = check_conjugate_sweep(yf, grid, number_in(j, "gap_tol", 1e-8));
  const bool pass = suite.pass() && conj.pass();
  write_json(prepare_out(ctx) / "verify_young.json",
             {{"command", "verify-young"}, {"seed", ctx.seed}, {"young", young_to_json(yf)},
              {"pass", pass}, {"suite", suite.to_json()}, {"conjugate", conj.to_json()}});
  for (const Report* rep : {&suite, &conj})
    for (const CheckRecord& rec : rep->records)
      if (!rec.pass)
        std::printf("FAIL %s: max violation %.3e over %zu samples%s%s\n", rec.name.c_str(),
                    rec.max_violation, rec.samples, rec.detail.empty() ? "" : "; ",
                    rec.detail.c_str());
  std::printf("%s: %s\n", yf.name().c_str(), pass ? "all checks pass" : "verification failed");
  return pass ? kPass : kVerificationFailure;
}

int cmd_profile(const RunContext& ctx) {
  const Json j = load_config(ctx);
  require_known_keys(j, {"young", "s", "x", "quadrature", "residual_tol", "i1_rtol"}, "profile");
  require(j.contains("young") && j.contains("s") && j.contains("x"), ErrorKind::Configuration,
          "profile needs 'young', 's' and 'x'");
  const YoungFunction yf = young_from_json(j["young"]);
  const double s = j["s"].get<double>();
  require(s > 0.0 && s < 1.0, ErrorKind::Configuration, "s must lie in (0,1)");
  require(j["x"].is_array() && !j["x"].empty(), ErrorKind::Configuration,
          "x must be a non-empty list");
  std::vector<double> xs;
  for (const Json& v : j["x"]) {
    require(v.is_number() && v.get<double>() > 0.0, ErrorKind::Configuration,
            "profile points must be positive numbers");
    xs.push_back(v.get<double>());
  }
  const QuadratureSpec q = quadrature_from_json(j.value("quadrature", Json()));
  q.validate();
  const double residual_tol = number_in(j, "residual_tol", 1e-3);
  const double i1_rtol = number_in(j, "i1_rtol", 1e-6);

  const fs::path out = prepare_out(ctx);
  const Field u0 = profile_field(s);
  std::ofstream csv(out / "profile.csv");
  csv << "x,I_eps,bound,operator_value,extrapolated,order,I1_closed,I1_numeric,I1_rel\n"
      << std::setprecision(17);
  Json rows = Json::array();
  bool pass = true;
  for (double x : xs) {
    const PointwiseResult res = pointwise_apply(yf, u0, {x, 0.0}, s, q);
    const double i_eps = profile_truncated_integral(yf, s, x, q.eps());
    const double bound = profile_residual_bound(yf, s, x, q.eps());
    const double i1 = profile_I1(yf, s, x);
    const double i1_num = profile_I1_numeric(yf, s, x);
    const double i1_rel = std::abs(i1_num - i1) / std::abs(i1);
    const bool ok = std::abs(res.extrapolated) <= residual_tol && i1_rel <= i1_rtol;
    pass = pass && ok;
    csv << x << ',' << i_eps << ',' << bound << ',' << res.value << ',' << res.extrapolated << ','
        << res.order << ',' << i1 << ',' << i1_num << ',' << i1_rel << '\n';
    rows.push_back({{"x", x}, {"I_eps", i_eps}, {"bound", bound}, {"operator", res.to_json()},
                    {"I1_closed", i1}, {"I1_numeric", i1_num}, {"I1_rel", i1_rel}, {"pass", ok}});
    std::printf("x=%-8g extrapolated %+.3e  order %.3f  I1 rel %.2e%s\n", x, res.extrapolated,
                res.order, i1_rel, ok ? "" : "  FAIL");
  }
  write_json(out / "profile.json",
             {{"command", "profile"}, {"young", young_to_json(yf)}, {"s", s},
              {"quadrature", quadrature_to_json(q)}, {"residual_tol", residual_tol},
              {"i1_rtol", i1_rtol}, {"rows", rows}, {"pass", pass},
              {"csv", {{"profile.csv", csv_schema({"x", "I_eps", "bound", "operator_value",
                                                   "extrapolated", "order", "I1_closed",
                                                   "I1_numeric", "I1_rel"})}}}});
  return pass ? kPass : kVerificationFailure;
}

int cmd_solve(const RunContext& ctx) {
  const Json j = load_config(ctx);
  const fs::path out = prepare_out(ctx);
  const SolveOutcome r = solve_and_write(j, config_dir(ctx), out);
  int code = kPass;
  if (j.contains("diagnostics"))
    code = write_diagnostics(r.problem, r.solution.u, j["diagnostics"], out,
                             {{"run", "run.json"}});
  return r.solution.converged ? code : kNonConvergence;
}

int cmd_diagnose(const RunContext& ctx) {
  const Json j = load_config(ctx);
  require_known_keys(j, {"solution", "solve", "diagnostics"}, "diagnose");
  require(j.contains("solution") != j.contains("solve"), ErrorKind::Configuration,
          "diagnose needs exactly one of 'solution' (a run record) or 'solve' (a solve config)");
  const fs::path out = prepare_out(ctx);
  const Json selection = j.value("diagnostics", all_diagnostics());

  if (j.contains("solve")) {
    const SolveOutcome r = solve_and_write(j["solve"], config_dir(ctx), out);
    const int code = write_diagnostics(r.problem, r.solution.u, selection, out,
                                       {{"run", "run.json"}});
    return r.solution.converged ? code : kNonConvergence;
  }
  require(j["solution"].is_string(), ErrorKind::Configuration,
          "'solution' must be the path of a run record");
  fs::path run_path = j["solution"].get<std::string>();
  if (run_path.is_relative()) run_path = config_dir(ctx) / run_path;
  require(fs::exists(run_path), ErrorKind::Configuration, "no run record at " + run_path.string());
  const Json run = load_json_file(run_path);
  require(run.contains("problem") && run.contains("solution_file"), ErrorKind::Configuration,
          run_path.string() + " is not a run record");
  const fs::path run_dir = run_path.parent_path();
  const DirichletProblem prob = problem_from_json(run["problem"], run_dir);
  const LatticeFunction u = read_lattice(run_dir / run["solution_file"].get<std::string>());
  require(u.grid().dim() == prob.domain.dim, ErrorKind::Configuration,
          "solution and problem dimensions differ");
  return write_diagnostics(prob, u, selection, out, {{"run", run_path.string()}});
}

int cmd_verify_all(const RunContext& ctx) {
  acceptance::Options opt;
  opt.seed = ctx.seed;
  Json all = Json::array();
  int failures = 0;
  for (int id : acceptance::criterion_ids()) {
    const auto r = acceptance::run_criterion(id, opt);
    std::printf("%s\n", acceptance::format_line(r).c_str());
    std::fflush(stdout);
    failures += !r.pass;
    all.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary},
                   {"details", r.details}});
  }
  write_json(prepare_out(ctx) / "acceptance.json",
             {{"command", "verify-all"}, {"seed", ctx.seed}, {"criteria", all}});
  return failures == 0 ? kPass : kVerificationFailure;
}

}  // namespace gflap::cli
