#pragma once

#include <cstdint>
#include <filesystem>

namespace gflap::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kConfigError = 2, kNonConvergence = 3 };

struct RunContext {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::uint64_t seed = 20241017;
  int threads = 1;
};

int cmd_verify_young(const RunContext& ctx);
int cmd_profile(const RunContext& ctx);
int cmd_solve(const RunContext& ctx);
int cmd_diagnose(const RunContext& ctx);
int cmd_verify_all(const RunContext& ctx);

}  // namespace gflap::cli
