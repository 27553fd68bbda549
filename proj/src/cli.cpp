#include "searchplan/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "searchplan/bayes.hpp"
#include "searchplan/errors.hpp"
#include "searchplan/field_io.hpp"
#include "searchplan/metrics.hpp"
#include "searchplan/oracles.hpp"

namespace searchplan::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", value);
  return buf;
}

Scenario scenario_from(const CommonOptions& common) {
  ScenarioConfig config = load_config(common.config_path);
  if (common.domain_box) config.domain_box = common.domain_box;
  if (common.grid) config.grid = *common.grid;
  return build_scenario(config);
}

void write_json_file(const std::filesystem::path& path,
                     const ordered_json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open '" + path.string() + "' for writing");
  }
  out << doc.dump(2) << "\n";
  out.flush();
  if (!out) {
    throw ConfigError("failed writing '" + path.string() + "'");
  }
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw ConfigError("failed writing '" + path.string() + "'");
  }
}

int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InfeasibleBudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

void validate_times(const std::vector<double>& times) {
  if (times.empty()) {
    throw ConfigError("times: need at least one value");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) {
      throw ConfigError("times: must be positive");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ConfigError("times: must be strictly increasing");
    }
  }
}

}  // namespace

int run_plan(const CommonOptions& common, double time, std::ostream& out,
             std::ostream& err) {
  if (!(time > 0.0)) {
    err << "error: T must be positive\n";
    return kExitConfig;
  }
  return run_guarded(err, [&]() {
    const Scenario scenario = scenario_from(common);
    const Plan plan = allocate(scenario, time);
    const PosteriorField post = posterior(plan);
    const PlanReport rep = report(plan);

    std::filesystem::create_directories(common.out_dir);
    save_csv(plan.allocation, common.out_dir / "plan.csv");
    save_csv(post.field, common.out_dir / "posterior.csv");

    ordered_json plan_doc;
    plan_doc["T"] = rep.time;
    plan_doc["E"] = rep.budget;
    plan_doc["lambda_star"] = rep.lambda_star;
    plan_doc["plateau_area"] = rep.plateau_area;
    plan_doc["detection_probability"] = rep.detection_probability;
    plan_doc["truncation_mass"] = rep.truncation_mass;
    write_json_file(common.out_dir / "plan.json", plan_doc);

    ordered_json post_doc;
    post_doc["T"] = rep.time;
    post_doc["normalizer"] = post.normalizer;
    if (post.plateau_value) {
      post_doc["plateau_value"] = *post.plateau_value;
    } else {
      post_doc["plateau_value"] = nullptr;
    }
    post_doc["plateau_area"] = rep.plateau_area;
    post_doc["sup_posterior"] = sup_norm(post.field);
    write_json_file(common.out_dir / "posterior.json", post_doc);

    out << "plan T=" << fmt(rep.time) << " E=" << fmt(rep.budget)
        << " lambda_star=" << fmt(rep.lambda_star)
        << " P=" << fmt(rep.detection_probability)
        << " plateau_area=" << fmt(rep.plateau_area) << " -> "
        << common.out_dir.string() << "\n";
    return kExitOk;
  });
}

int run_sweep(const CommonOptions& common, const std::vector<double>& times,
              std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    validate_times(times);
    const Scenario scenario = scenario_from(common);
    const FlatteningProfile profile = flattening_profile(scenario, times);

    std::filesystem::create_directories(common.out_dir);
    std::string csv = "T,E,lambda_star,P,plateau_area,plateau_value\n";
    for (const FlatteningRow& row : profile.rows) {
      csv += to_full_precision(row.time) + "," + to_full_precision(row.budget) +
             "," + to_full_precision(row.lambda_star) + "," +
             to_full_precision(row.detection_probability) + "," +
             to_full_precision(row.plateau_area) + "," +
             to_full_precision(row.plateau_value) + "\n";
    }
    write_text_file(common.out_dir / "sweep.csv", csv);

    bool p_increasing = true;
    for (std::size_t i = 1; i < profile.rows.size(); ++i) {
      if (!(profile.rows[i].detection_probability >
            profile.rows[i - 1].detection_probability)) {
        p_increasing = false;
      }
    }

    ordered_json doc;
    doc["rows"] = ordered_json::array();
    for (const FlatteningRow& row : profile.rows) {
      ordered_json r;
      r["T"] = row.time;
      r["E"] = row.budget;
      r["lambda_star"] = row.lambda_star;
      r["P"] = row.detection_probability;
      r["plateau_area"] = row.plateau_area;
      r["plateau_value"] = row.plateau_value;
      r["sup_posterior"] = row.sup_posterior;
      r["uniform_bound"] = row.uniform_bound;
      doc["rows"].push_back(r);
    }
    doc["flags"]["plateau_areas_increasing"] = profile.areas_increasing;
    doc["flags"]["plateau_value_decreasing"] = profile.plateau_decreasing;
    doc["flags"]["sup_tracks_uniform_bound"] = profile.sup_tracks_uniform;
    doc["flags"]["detection_probability_increasing"] = p_increasing;
    write_json_file(common.out_dir / "sweep.json", doc);

    out << "sweep over " << times.size() << " times -> "
        << (common.out_dir / "sweep.csv").string() << "\n";
    return kExitOk;
  });
}

namespace {

struct PropertyResult {
  std::string name;
  std::string status;  // PASS | FAIL | EXPECTED-NEGATIVE | SKIPPED
  std::string detail;
};

class PropertyTable {
 public:
  void pass_fail(const std::string& name, bool ok, const std::string& detail) {
    results_.push_back({name, ok ? "PASS" : "FAIL", detail});
  }
  /// A Remark-style counterexample: the property is SUPPOSED to break here,
  /// and a break is reported as expected (still a healthy run).
  void expect_negative(const std::string& name, bool broke,
                       const std::string& detail) {
    results_.push_back({name, broke ? "EXPECTED-NEGATIVE" : "FAIL", detail});
  }
  void skip(const std::string& name, const std::string& detail) {
    results_.push_back({name, "SKIPPED", detail});
  }

  bool any_fail() const {
    for (const PropertyResult& r : results_) {
      if (r.status == "FAIL") return true;
    }
    return false;
  }
  const std::vector<PropertyResult>& results() const { return results_; }

 private:
  std::vector<PropertyResult> results_;
};

/// Whether the per-cell exponential rate is effectively constant on the
/// region; decides if the plateau/uniform-increment theorems apply.
bool rates_constant_on(const ArrayXd& rates, const Mask& mask) {
  return masked_stats(rates, mask).rel_std <= 1e-6;
}

}  // namespace

int run_verify(const CommonOptions& common, const VerifyOptions& options,
               std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    validate_times(options.times);
    const Scenario scenario = scenario_from(common);
    const std::vector<double>& times = options.times;

    std::vector<Plan> plans;
    std::vector<PosteriorField> posts;
    plans.reserve(times.size());
    posts.reserve(times.size());
    for (double time : times) {
      plans.push_back(allocate(scenario, time));
      posts.push_back(posterior(plans.back()));
    }

    const ArrayXd* rates = scenario.exponential_rates();
    const auto* global_exp = scenario.detection().as<ExponentialDetection>();
    const double prior_mass = integrate(scenario.prior_field());
    const double cell_area = scenario.domain().cell_area();

    PropertyTable table;

    {  // integrate(allocation) = E(T)
      double worst = 0.0;
      for (const Plan& plan : plans) {
        worst = std::max(worst, std::abs(cost(plan) - plan.budget) / plan.budget);
      }
      table.pass_fail("budget identity", worst <= 1e-6,
                      "max rel error " + fmt(worst));
    }

    {  // allocations nest as T grows
      double worst = 0.0;
      for (std::size_t i = 1; i < plans.size(); ++i) {
        const double min_diff = (plans[i].allocation.values() -
                                 plans[i - 1].allocation.values())
                                    .minCoeff();
        worst = std::min(worst, min_diff);
      }
      table.pass_fail("monotone build-up", worst >= -1e-10,
                      "min cellwise increment " + fmt(worst));
    }

    {  // lambda* strictly decreasing, P strictly increasing
      bool lambda_ok = true;
      bool p_ok = true;
      std::vector<double> probabilities;
      probabilities.reserve(plans.size());
      for (const Plan& plan : plans) {
        probabilities.push_back(detection_probability(plan));
      }
      for (std::size_t i = 1; i < plans.size(); ++i) {
        if (!(plans[i].lambda_star < plans[i - 1].lambda_star)) lambda_ok = false;
        if (!(probabilities[i] > probabilities[i - 1])) p_ok = false;
      }
      table.pass_fail("threshold decreasing", lambda_ok,
                      "lambda* " + fmt(plans.front().lambda_star) + " -> " +
                          fmt(plans.back().lambda_star));
      table.pass_fail("detection increasing", p_ok,
                      "P " + fmt(probabilities.front()) + " -> " +
                          fmt(probabilities.back()));
    }

    {  // integrate(posterior) = 1
      double worst = 0.0;
      for (const PosteriorField& post : posts) {
        worst = std::max(worst, std::abs(integrate(post.field) - 1.0));
      }
      table.pass_fail("posterior normalization", worst <= 1e-6,
                      "max |mass - 1| " + fmt(worst));
    }

    if (rates) {  // q_x(phi*(x)) = lambda* on supported cells
      double worst = 0.0;
      for (const Plan& plan : plans) {
        const ArrayXd after = scenario.initial_attractiveness() *
                              (-(*rates) * plan.allocation.values()).exp();
        for (Eigen::Index k = 0; k < after.size(); ++k) {
          if (plan.allocation[static_cast<std::size_t>(k)] > 0.0) {
            worst = std::max(worst,
                             std::abs(after[k] / plan.lambda_star - 1.0));
          }
        }
      }
      table.pass_fail("water-filling at threshold", worst <= 1e-9,
                      "max rel deviation " + fmt(worst));
    } else {
      table.skip("water-filling at threshold",
                 "no closed-rate detection model");
    }

    const bool theorems_apply =
        rates != nullptr &&
        rates_constant_on(*rates, plans.front().plateau.mask);

    {  // posterior constant on D_T (or demonstrably not, per the Remark)
      double worst_rel_std = 0.0;
      for (std::size_t i = 0; i < plans.size(); ++i) {
        worst_rel_std = std::max(
            worst_rel_std,
            plateau_constancy(posts[i], plans[i].plateau).rel_std);
      }
      const std::string detail = "max rel_std " + fmt(worst_rel_std);
      if (!rates) {
        table.skip("plateau constancy", detail + " (generic model)");
      } else if (theorems_apply) {
        table.pass_fail("plateau constancy", worst_rel_std <= 1e-9, detail);
      } else {
        table.expect_negative("plateau constancy", worst_rel_std > 1e-2,
                              detail + " (rate varies; expected non-constant)");
      }
    }

    {  // increments uniform on D_T (or demonstrably not)
      if (times.size() < 2) {
        table.skip("incremental uniformity", "needs two times");
      } else {
        const ScalarField inc =
            incremental(scenario, times[0], times[1] - times[0]);
        const MaskedStats stats = uniformity(inc, plans.front().plateau);
        const std::string detail =
            "rel_std " + fmt(stats.rel_std) + ", mean " + fmt(stats.mean);
        if (!rates) {
          table.skip("incremental uniformity", detail + " (generic model)");
        } else if (theorems_apply) {
          table.pass_fail("incremental uniformity", stats.rel_std <= 1e-9,
                          detail);
        } else {
          table.expect_negative("incremental uniformity", stats.rel_std > 1e-2,
                                detail +
                                    " (rate varies; expected non-uniform)");
        }
      }
    }

    if (rates) {  // Eq.-branch exactness of the posterior
      double worst = 0.0;
      bool plateau_checked = false;
      for (std::size_t i = 0; i < plans.size(); ++i) {
        const Plan& plan = plans[i];
        const PosteriorField& post = posts[i];
        const ArrayXd& pi = scenario.prior_field().values();
        for (Eigen::Index k = 0; k < pi.size(); ++k) {
          const std::size_t cell = static_cast<std::size_t>(k);
          if (!plan.plateau.mask[k] && pi[k] > 0.0) {
            // off D_T: pi_T = pi / normalizer
            worst = std::max(
                worst,
                std::abs(post.field[cell] * post.normalizer / pi[k] - 1.0));
          } else if (plan.plateau.mask[k] && global_exp) {
            // on D_T: pi_T = lambda* / (alpha normalizer)
            worst = std::max(
                worst, std::abs(post.field[cell] * post.normalizer *
                                    global_exp->alpha / plan.lambda_star -
                                1.0));
            plateau_checked = true;
          }
        }
      }
      table.pass_fail("posterior branch exactness", worst <= 1e-12,
                      "max rel deviation " + fmt(worst) +
                          (plateau_checked ? "" : " (off-plateau branch only)"));
    } else {
      table.skip("posterior branch exactness", "no closed-rate detection model");
    }

    {  // normalizer is the non-detection probability
      double worst = 0.0;
      for (std::size_t i = 0; i < plans.size(); ++i) {
        const double p = detection_probability(plans[i]);
        worst = std::max(worst, std::abs(posts[i].normalizer - (prior_mass - p)));
      }
      table.pass_fail("normalizer = prior mass - P", worst <= 1e-9,
                      "max abs error " + fmt(worst));
    }

    {  // plateau grows; its level falls; level stays under 1/area
      bool areas_ok = true;
      bool value_ok = true;
      bool bound_ok = true;
      double prev_area = 0.0;
      double prev_value = HUGE_VAL;
      for (std::size_t i = 0; i < plans.size(); ++i) {
        const double area = plans[i].plateau.area;
        const MaskedStats stats =
            plateau_constancy(posts[i], plans[i].plateau);
        const double value = posts[i].plateau_value.value_or(stats.mean);
        if (!(area > prev_area)) areas_ok = false;
        if (!(value < prev_value)) value_ok = false;
        if (!(stats.mean + stats.max_abs_dev <= (1.0 + 1e-9) / area)) {
          bound_ok = false;
        }
        prev_area = area;
        prev_value = value;
      }
      table.pass_fail("plateau growth", areas_ok,
                      "area " + fmt(plans.front().plateau.area) + " -> " +
                          fmt(plans.back().plateau.area));
      if (theorems_apply) {
        table.pass_fail("plateau flattening", value_ok && bound_ok,
                        std::string("value decreasing: ") +
                            (value_ok ? "yes" : "no") + ", under 1/area: " +
                            (bound_ok ? "yes" : "no"));
      } else {
        table.skip("plateau flattening",
                   "constancy does not apply; no level to track");
      }
    }

    // Closed-form oracle comparison, where one exists and the plateau still
    // fits inside the truncated domain.
    std::vector<OracleComparison> comparisons;
    {
      const Domain& domain = scenario.domain();
      const double sup_tol =
          std::max(1e-2, 2.0 * (domain.dx() + domain.dy()));
      const double p_tol = std::max(1e-3, domain.dx() * domain.dy());
      const double area_tol =
          std::max(0.1, 3.0 * (domain.dx() + domain.dy()));

      const auto* cn_prior = scenario.prior().as<CircularNormal>();
      const auto* corner_prior = scenario.prior().as<CornerExponential>();
      const bool unit_alpha = global_exp && global_exp->alpha == 1.0;

      if (unit_alpha && (cn_prior || corner_prior)) {
        bool ok = true;
        std::size_t compared = 0;
        for (const Plan& plan : plans) {
          std::optional<OracleComparison> cmp;
          if (cn_prior) {
            const CircularNormalCase c{cn_prior->sigma, scenario.sweep_width(),
                                       scenario.speed()};
            const double reach = cn_plateau_radius(c, plan.time);
            const double room =
                0.49 * std::min(domain.x_max() - domain.x_min(),
                                domain.y_max() - domain.y_min());
            if (reach <= room) cmp = compare_circular_normal(plan, c);
          } else {
            const CornerExponentialCase c{scenario.sweep_width(),
                                          scenario.speed()};
            const double reach = c.b(plan.time);
            const double room =
                0.98 * std::min(domain.x_max() - domain.x_min(),
                                domain.y_max() - domain.y_min());
            if (reach <= room) cmp = compare_corner_exponential(plan, c);
          }
          if (!cmp) continue;  // plateau spills over the domain boundary
          ++compared;
          if (cmp->sup_err_allocation > sup_tol ||
              cmp->err_detection_probability > p_tol ||
              cmp->err_plateau_area > area_tol) {
            ok = false;
          }
          comparisons.push_back(*cmp);
        }
        if (compared == 0) {
          table.skip("closed-form oracle",
                     "plateau exceeds the domain at every requested T");
        } else {
          double worst_sup = 0.0;
          for (const OracleComparison& cmp : comparisons) {
            worst_sup = std::max(worst_sup, cmp.sup_err_allocation);
          }
          table.pass_fail("closed-form oracle", ok,
                          std::to_string(compared) + " time(s), max sup err " +
                              fmt(worst_sup));
        }
      } else {
        table.skip("closed-form oracle", "no closed form for this scenario");
      }
    }

    {  // brute-force greedy cross-check (opt-in: needs a quantum)
      if (!options.quantum) {
        table.skip("greedy oracle", "no --quantum given");
      } else if (scenario.domain().cell_count() > 64 * 64) {
        table.skip("greedy oracle", "grid larger than 64x64");
      } else {
        const Plan& plan = plans.front();
        const double quantum = *options.quantum;
        if (!(quantum > 0.0) || plan.budget / quantum > 1e7) {
          table.skip("greedy oracle", "quantum outside the step limit");
        } else {
          const ScalarField greedy = greedy_allocate(
              scenario, plan.budget, quantum, scenario.domain());
          const double max_dev =
              (greedy.values() - plan.allocation.values()).abs().maxCoeff();
          const double bound = 3.0 * quantum / cell_area;
          table.pass_fail("greedy oracle", max_dev <= bound,
                          "max dev " + fmt(max_dev) + " vs bound " + fmt(bound));
        }
      }
    }

    std::filesystem::create_directories(common.out_dir);
    {
      ordered_json doc;
      doc["comparisons"] = ordered_json::array();
      for (const OracleComparison& cmp : comparisons) {
        ordered_json c;
        c["case"] = cmp.case_name;
        c["T"] = cmp.time;
        c["sup_err_allocation"] = cmp.sup_err_allocation;
        c["err_P"] = cmp.err_detection_probability;
        c["err_plateau"] = cmp.err_plateau_area;
        doc["comparisons"].push_back(c);
      }
      write_json_file(common.out_dir / "oracle_report.json", doc);
    }
    {
      ordered_json doc;
      doc["times"] = times;
      doc["properties"] = ordered_json::array();
      for (const PropertyResult& r : table.results()) {
        ordered_json p;
        p["name"] = r.name;
        p["status"] = r.status;
        p["detail"] = r.detail;
        doc["properties"].push_back(p);
      }
      doc["all_pass"] = !table.any_fail();
      write_json_file(common.out_dir / "verify.json", doc);
    }

    for (const PropertyResult& r : table.results()) {
      char line[256];
      std::snprintf(line, sizeof(line), "%-30s %-18s %s\n", r.name.c_str(),
                    r.status.c_str(), r.detail.c_str());
      out << line;
    }
    return table.any_fail() ? kExitProperty : kExitOk;
  });
}

}  // namespace searchplan::cli
