#include "searchplan/config.hpp"

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "searchplan/errors.hpp"
#include "searchplan/field_io.hpp"

namespace searchplan {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const json& require(const json& obj, const std::string& context,
                    const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(context + ": missing field '" + key + "'");
  return *it;
}

double number(const json& value, const std::string& context) {
  if (!value.is_number()) fail(context + ": expected a number");
  return value.get<double>();
}

std::string text(const json& value, const std::string& context) {
  if (!value.is_string()) fail(context + ": expected a string");
  return value.get<std::string>();
}

void reject_unknown(const json& obj, const std::string& context,
                    std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    bool found = false;
    for (const char* k : known) {
      if (item.key() == k) {
        found = true;
        break;
      }
    }
    if (!found) fail(context + ": unknown field '" + item.key() + "'");
  }
}

Point point(const json& value, const std::string& context) {
  if (!value.is_array() || value.size() != 2) {
    fail(context + ": expected [x, y]");
  }
  return {number(value[0], context), number(value[1], context)};
}

std::array<double, 4> box(const json& value, const std::string& context) {
  if (!value.is_array() || value.size() != 4) {
    fail(context + ": expected [x_min, x_max, y_min, y_max]");
  }
  return {number(value[0], context), number(value[1], context),
          number(value[2], context), number(value[3], context)};
}

ScalarField load_field(const json& value, const std::string& context,
                       const std::filesystem::path& base_dir) {
  std::filesystem::path csv(text(value, context));
  if (csv.is_relative()) csv = base_dir / csv;
  return load_csv(csv);
}

TargetPrior parse_prior(const json& node,
                        const std::filesystem::path& base_dir) {
  if (!node.is_object()) fail("prior: expected an object");
  const std::string family = text(require(node, "prior", "family"), "prior.family");
  try {
    if (family == "circular_normal") {
      reject_unknown(node, "prior", {"family", "center", "sigma"});
      CircularNormal cn;
      if (node.contains("center")) cn.center = point(node["center"], "prior.center");
      if (node.contains("sigma")) cn.sigma = number(node["sigma"], "prior.sigma");
      return TargetPrior(cn);
    }
    if (family == "corner_exponential") {
      reject_unknown(node, "prior", {"family", "origin"});
      CornerExponential ce;
      if (node.contains("origin")) ce.origin = point(node["origin"], "prior.origin");
      return TargetPrior(ce);
    }
    if (family == "uniform_box") {
      reject_unknown(node, "prior", {"family", "box"});
      const auto b = box(require(node, "prior", "box"), "prior.box");
      return TargetPrior(UniformBox{b[0], b[1], b[2], b[3]});
    }
    if (family == "gridded") {
      reject_unknown(node, "prior", {"family", "csv"});
      return TargetPrior::gridded(
          load_field(require(node, "prior", "csv"), "prior.csv", base_dir));
    }
  } catch (const std::invalid_argument& e) {
    fail("prior: " + std::string(e.what()));
  }
  fail("prior.family: unknown family '" + family + "'");
}

DetectionModel parse_detection(const json& node,
                               const std::filesystem::path& base_dir) {
  if (!node.is_object()) fail("detection: expected an object");
  const std::string family =
      text(require(node, "detection", "family"), "detection.family");
  try {
    if (family == "exponential") {
      reject_unknown(node, "detection", {"family", "alpha"});
      ExponentialDetection e;
      if (node.contains("alpha")) {
        e.alpha = number(node["alpha"], "detection.alpha");
      }
      return DetectionModel(e);
    }
    if (family == "spatial_exponential") {
      reject_unknown(node, "detection", {"family", "beta"});
      SpatialExponentialDetection s;
      const json& beta = require(node, "detection", "beta");
      if (!(beta.is_string() && beta.get<std::string>() == "norm_sq")) {
        s.beta = load_field(beta, "detection.beta", base_dir);
      }
      return DetectionModel(std::move(s));
    }
  } catch (const std::invalid_argument& e) {
    fail("detection: " + std::string(e.what()));
  }
  fail("detection.family: unknown family '" + family + "'");
}

}  // namespace

ScenarioConfig parse_config(std::istream& in,
                            const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(std::string("config: ") + e.what());
  }
  if (!root.is_object()) fail("config: expected a JSON object");
  reject_unknown(root, "config",
                 {"prior", "detection", "sweep_width", "speed", "domain",
                  "grid", "mass_tol", "renormalize_prior"});

  ScenarioConfig config{
      parse_prior(require(root, "config", "prior"), base_dir),
      parse_detection(require(root, "config", "detection"), base_dir)};
  config.sweep_width = number(require(root, "config", "sweep_width"), "sweep_width");
  config.speed = number(require(root, "config", "speed"), "speed");
  if (root.contains("domain")) {
    config.domain_box = box(root["domain"], "domain");
  }
  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() ||
        !g[1].is_number_integer()) {
      fail("grid: expected [nx, ny] integers");
    }
    config.grid = GridSpec{g[0].get<int>(), g[1].get<int>()};
  }
  if (root.contains("mass_tol")) {
    config.mass_tol = number(root["mass_tol"], "mass_tol");
    if (!(config.mass_tol > 0.0 && config.mass_tol < 1.0)) {
      fail("mass_tol: must be in (0, 1)");
    }
  }
  if (root.contains("renormalize_prior")) {
    if (!root["renormalize_prior"].is_boolean()) {
      fail("renormalize_prior: expected a boolean");
    }
    config.renormalize_prior = root["renormalize_prior"].get<bool>();
  }
  if (!(config.sweep_width > 0.0)) fail("sweep_width: must be positive");
  if (!(config.speed > 0.0)) fail("speed: must be positive");
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail("cannot open config '" + path.string() + "'");
  }
  return parse_config(in, path.parent_path());
}

Scenario build_scenario(const ScenarioConfig& config) {
  try {
    Domain domain = config.domain_box
                        ? Domain((*config.domain_box)[0], (*config.domain_box)[1],
                                 (*config.domain_box)[2], (*config.domain_box)[3],
                                 config.grid.nx, config.grid.ny)
                        : default_domain(config.prior, config.mass_tol,
                                         config.grid.nx, config.grid.ny);
    return Scenario(config.prior, config.detection, config.sweep_width,
                    config.speed, domain,
                    ScenarioOptions{config.renormalize_prior, config.mass_tol});
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario: " + std::string(e.what()));
  } catch (const std::domain_error& e) {
    throw ConfigError("scenario: domain extends beyond the supplied data (" +
                      std::string(e.what()) + ")");
  }
}

}  // namespace searchplan
