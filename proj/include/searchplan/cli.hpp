#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "searchplan/config.hpp"

namespace searchplan::cli {

/// Shared exit codes for the command entry points.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;      // bad config / bad arguments
inline constexpr int kExitInfeasible = 2;  // budget exceeds what Q can absorb
inline constexpr int kExitProperty = 3;    // a verification property failed

struct CommonOptions {
  std::filesystem::path config_path;
  std::optional<std::array<double, 4>> domain_box;  // override config
  std::optional<GridSpec> grid;                     // override config
  std::filesystem::path out_dir = ".";
};

/// `plan --T <time>`: write plan.csv, plan.json, posterior.csv,
/// posterior.json into out_dir.
int run_plan(const CommonOptions& common, double time, std::ostream& out,
             std::ostream& err);

/// `sweep --times t1,t2,...`: write sweep.csv and sweep.json.
int run_sweep(const CommonOptions& common, const std::vector<double>& times,
              std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::vector<double> times{1.0, 5.0, 10.0, 50.0, 200.0};
  /// When set, also cross-check against the greedy oracle using this effort
  /// quantum (requires a small grid).
  std::optional<double> quantum;
};

/// `verify`: run the structural property table, print one line per property,
/// write verify.json and oracle_report.json. Exit 3 if any property fails.
int run_verify(const CommonOptions& common, const VerifyOptions& options,
               std::ostream& out, std::ostream& err);

}  // namespace searchplan::cli
