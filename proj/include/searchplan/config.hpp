#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <utility>

#include "searchplan/planner.hpp"

namespace searchplan {

struct GridSpec {
  int nx = 512;
  int ny = 512;
};

/// Parsed scenario configuration, before discretization.
struct ScenarioConfig {
  ScenarioConfig(TargetPrior p, DetectionModel d)
      : prior(std::move(p)), detection(std::move(d)) {}

  TargetPrior prior;
  DetectionModel detection;
  double sweep_width = 1.0;
  double speed = 1.0;
  /// {x_min, x_max, y_min, y_max}; defaults to the prior's natural box.
  std::optional<std::array<double, 4>> domain_box;
  GridSpec grid;
  double mass_tol = 1e-5;
  bool renormalize_prior = false;
};

/// Parse a JSON scenario description. Relative CSV paths (gridded priors,
/// spatial detection rates) resolve against base_dir. Throws ConfigError
/// with a field-qualified message on any schema or value problem.
ScenarioConfig parse_config(std::istream& in,
                            const std::filesystem::path& base_dir);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Discretize: pick the domain (explicit box or default_domain for the
/// prior's mass_tol), build the grid, and construct the Scenario.
Scenario build_scenario(const ScenarioConfig& config);

}  // namespace searchplan
