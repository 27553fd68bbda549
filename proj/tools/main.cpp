#include <array>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "searchplan/cli.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string out_dir = ".";
  std::vector<int> grid;
  std::vector<double> domain;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "Scenario description (JSON)")
        ->required();
    cmd->add_option("--out", out_dir, "Output directory");
    cmd->add_option("--grid", grid, "Grid resolution NX,NY")
        ->delimiter(',')
        ->expected(2);
    cmd->add_option("--domain", domain, "Domain box x0,x1,y0,y1")
        ->delimiter(',')
        ->expected(4);
  }

  searchplan::cli::CommonOptions resolve() const {
    searchplan::cli::CommonOptions common;
    common.config_path = config;
    common.out_dir = out_dir;
    if (!grid.empty()) {
      common.grid = searchplan::GridSpec{grid[0], grid[1]};
    }
    if (!domain.empty()) {
      common.domain_box =
          std::array<double, 4>{domain[0], domain[1], domain[2], domain[3]};
    }
    return common;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniformly optimal search-effort allocation"};
  app.require_subcommand(1);

  CommonFlags plan_flags;
  double plan_time = 0.0;
  CLI::App* plan_cmd =
      app.add_subcommand("plan", "Compute one plan and its posterior");
  plan_flags.attach(plan_cmd);
  plan_cmd->add_option("--T", plan_time, "Search time horizon")->required();

  CommonFlags sweep_flags;
  std::vector<double> sweep_times;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Plan across a ladder of times");
  sweep_flags.attach(sweep_cmd);
  sweep_cmd->add_option("--times", sweep_times, "Times t1,t2,...")
      ->delimiter(',')
      ->required();

  CommonFlags verify_flags;
  searchplan::cli::VerifyOptions verify_options;
  std::vector<double> verify_times;
  double quantum = 0.0;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the structural property suite");
  verify_flags.attach(verify_cmd);
  verify_cmd->add_option("--times", verify_times, "Times t1,t2,...")
      ->delimiter(',');
  CLI::Option* quantum_opt = verify_cmd->add_option(
      "--quantum", quantum, "Effort quantum for the greedy cross-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : searchplan::cli::kExitConfig;
  }

  if (plan_cmd->parsed()) {
    return searchplan::cli::run_plan(plan_flags.resolve(), plan_time, std::cout,
                                     std::cerr);
  }
  if (sweep_cmd->parsed()) {
    return searchplan::cli::run_sweep(sweep_flags.resolve(), sweep_times,
                                      std::cout, std::cerr);
  }
  if (!verify_times.empty()) {
    verify_options.times = verify_times;
  }
  if (quantum_opt->count() > 0) {
    verify_options.quantum = quantum;
  }
  return searchplan::cli::run_verify(verify_flags.resolve(), verify_options,
                                     std::cout, std::cerr);
}
