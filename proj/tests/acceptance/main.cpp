// Prints one PASS/FAIL line per acceptance criterion. Exit status is the
// number of failing criteria (capped at 255).
#include <algorithm>
#include <cstdio>
#include <fstream>

#include "CLI11.hpp"
#include "acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gflap acceptance criteria"};
  std::vector<int> only;
  std::uint64_t seed = gflap::acceptance::Options{}.seed;
  std::string json_out;
  app.add_option("--only", only, "Criteria to run (default: all)");
  app.add_option("--seed", seed, "Sampling seed");
  app.add_option("--json", json_out, "Write the detailed results here");
  CLI11_PARSE(app, argc, argv);

  if (only.empty()) only = gflap::acceptance::criterion_ids();
  gflap::acceptance::Options opt;
  opt.seed = seed;
  int failures = 0;
  gflap::Json all = gflap::Json::array();
  for (int id : only) {
    const auto r = gflap::acceptance::run_criterion(id, opt);
    std::printf("%s\n", gflap::acceptance::format_line(r).c_str());
    std::fflush(stdout);
    failures += !r.pass;
    all.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary},
                   {"seconds", r.seconds}, {"details", r.details}});
  }
  if (!json_out.empty()) std::ofstream(json_out) << all.dump(2) << '\n';
  return std::min(failures, 255);
}
