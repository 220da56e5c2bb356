#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "gflap/errors.hpp"
#include "gflap/parallel.hpp"

using gflap::cli::RunContext;

namespace {

int exit_code_for(gflap::ErrorKind kind) {
  switch (kind) {
    case gflap::ErrorKind::NumericalFailure:
      return gflap::cli::kNonConvergence;
    case gflap::ErrorKind::InsufficientData:
      return gflap::cli::kVerificationFailure;
    default:
      return gflap::cli::kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional g-Laplacian: Young-function checks, operator profiles, "
               "Dirichlet solves and regularity diagnostics"};
  app.require_subcommand(1);

  RunContext ctx;
  std::function<int(const RunContext&)> command;
  auto add = [&](const char* name, const char* help, int (*fn)(const RunContext&),
                 bool needs_config) {
    CLI::App* sub = app.add_subcommand(name, help);
    auto* opt = sub->add_option("--config", ctx.config, "JSON configuration file");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", ctx.out, "Output directory (created if missing)");
    sub->add_option("--seed", ctx.seed, "Seed for sampled checks");
    sub->add_option("--threads", ctx.threads, "Worker threads")->check(CLI::Range(1, 256));
    sub->callback([&command, fn] { command = fn; });
  };
  add("verify-young", "Inequality suite and conjugate sweep for a Young function",
      gflap::cli::cmd_verify_young, true);
  add("profile", "One-dimensional harmonic profile x_+^s at a list of points",
      gflap::cli::cmd_profile, true);
  add("solve", "Discrete Dirichlet problem, with optional chained diagnostics",
      gflap::cli::cmd_solve, true);
  add("diagnose", "Regularity diagnostics for a stored or freshly computed solution",
      gflap::cli::cmd_diagnose, true);
  add("verify-all", "Run every acceptance criterion", gflap::cli::cmd_verify_all, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gflap::cli::kConfigError;
  }

  try {
    gflap::set_num_threads(ctx.threads);
    return command(ctx);
  } catch (const gflap::Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", std::string(gflap::to_string(e.kind())).c_str(),
                 e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return gflap::cli::kConfigError;
  }
}
