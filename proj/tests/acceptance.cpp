// Acceptance gate: one line per criterion, exit code = number of failures.
// Every tolerance is pinned here; loosening one is a reviewed change, not a
// test-run knob.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "searchplan/bayes.hpp"
#include "searchplan/field.hpp"
#include "searchplan/metrics.hpp"
#include "searchplan/oracles.hpp"
#include "searchplan/planner.hpp"

using namespace searchplan;

namespace {

int failures = 0;

void report(int number, const char* label, bool ok, const std::string& detail) {
  std::printf("criterion %d (%s): %s  %s\n", number, label,
              ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    acc += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
  }
  return acc * h / 3.0;
}

double water_filling_deviation(const Scenario& sc, const Plan& plan) {
  const ArrayXd& q0 = sc.initial_attractiveness();
  const ArrayXd after =
      q0 * (-(*sc.exponential_rates()) * plan.allocation.values()).exp();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < q0.size(); ++k) {
    if (plan.allocation.values()[k] > 0.0) {
      worst = std::max(worst, std::abs(after[k] / plan.lambda_star - 1.0));
    }
  }
  return worst;
}

}  // namespace

int main() {
  // ---- quadrant exponential at the reference resolution -------------------
  const auto corner_start = std::chrono::steady_clock::now();
  const Scenario corner(TargetPrior{CornerExponential{}},
                        DetectionModel{ExponentialDetection{1.0}}, 1.0, 5.0,
                        Domain(0, 15, 0, 15, 512, 512));
  const Plan corner10 = allocate(corner, 10.0);
  const double corner_elapsed = seconds_since(corner_start);
  const CornerExponentialCase corner_case{1.0, 5.0};

  {  // 1: allocation closed form, budget identity, compute time
    double sup = 0.0;
    for (std::size_t k = 0; k < corner.domain().cell_count(); ++k) {
      const Point c = corner.domain().center(k);
      sup = std::max(sup, std::abs(corner10.allocation[k] -
                                   corner_allocation(corner_case, c.x, c.y,
                                                     10.0)));
    }
    const double budget_rel = std::abs(cost(corner10) - 50.0) / 50.0;
    const bool ok = sup <= 1e-2 && budget_rel <= 1e-6 && corner_elapsed <= 10.0;
    report(1, "quadrant allocation at 512^2", ok,
           "sup err " + num(sup) + ", budget rel " + num(budget_rel) + ", " +
               num(corner_elapsed) + " s");
  }

  {  // 2: detection probability against the quadrature-validated closed form
    const double b = corner_case.b(10.0);
    const double closed = corner_detection_probability(corner_case, 10.0);
    const double numeric = simpson(
        [&](double s) { return (1.0 - std::exp(s - b)) * s * std::exp(-s); },
        0.0, b, 20000);
    const double formula_err = std::abs(numeric - closed);
    const double plan_err =
        std::abs(detection_probability(corner10) - closed);
    const bool ok = formula_err <= 1e-6 && plan_err <= 1e-3;
    report(2, "detection probability, quadrature-validated", ok,
           "formula err " + num(formula_err) + ", plan err " + num(plan_err));
  }

  const Plan corner50 = allocate(corner, 50.0);

  {  // 3: posterior plateau constancy and level at T = 10 and 50
    bool ok = true;
    std::string detail;
    for (const Plan* plan : {&corner10, &corner50}) {
      const PosteriorField post = posterior(*plan);
      const MaskedStats stats = plateau_constancy(post, plan->plateau);
      const double level =
          corner_plateau_value(corner_case, plan->time);
      const double level_err = std::abs(*post.plateau_value - level);
      if (!(stats.rel_std <= 1e-9 && level_err <= 1e-4)) ok = false;
      if (!detail.empty()) detail += "; ";
      detail += "T=" + num(plan->time) + ": rel_std " + num(stats.rel_std) +
                ", level err " + num(level_err);
    }
    report(3, "posterior plateau at T=10,50", ok, detail);
  }

  // ---- circular normal at the reference resolution ------------------------
  const Scenario cn(TargetPrior{CircularNormal{{0.0, 0.0}, 1.0}},
                    DetectionModel{ExponentialDetection{1.0}}, 1.0, 5.0,
                    Domain(-6, 6, -6, 6, 512, 512));
  const CircularNormalCase cn_case{1.0, 1.0, 5.0};
  const Plan cn4 = allocate(cn, 4.0);

  {  // 4: circular normal closed forms at T = 4
    double sup = 0.0;
    for (std::size_t k = 0; k < cn.domain().cell_count(); ++k) {
      const Point c = cn.domain().center(k);
      const double r = std::hypot(c.x, c.y);
      sup = std::max(sup, std::abs(cn4.allocation[k] -
                                   cn_allocation(cn_case, r, 4.0)));
    }
    const double p_err = std::abs(detection_probability(cn4) -
                                  cn_detection_probability(cn_case, 4.0));
    const double radius = cn_plateau_radius(cn_case, 4.0);
    const double measured_radius =
        std::sqrt(cn4.plateau.area / std::numbers::pi);
    const double radius_rel = std::abs(measured_radius / radius - 1.0);
    const bool ok = sup <= 1e-2 && p_err <= 1e-3 && radius_rel <= 1e-2;
    report(4, "circular normal at 512^2", ok,
           "sup err " + num(sup) + ", P err " + num(p_err) + ", radius rel " +
               num(radius_rel));
  }

  {  // 5: uniform incremental effort on D_10 over [10, 20]
    const ScalarField inc = incremental(corner, 10.0, 10.0);
    const MaskedStats stats = masked_stats(inc.values(), corner10.plateau.mask);
    const double mean_err = std::abs(stats.mean - 1.7399971521957972);
    const bool ok = stats.rel_std <= 1e-9 && mean_err <= 2e-3;
    report(5, "uniform increment on the plateau", ok,
           "rel_std " + num(stats.rel_std) + ", mean err " + num(mean_err));
  }

  {  // 6: varying rate breaks constancy, the budget machinery survives
    const Scenario spatial(TargetPrior{CircularNormal{{2.5, 2.5}, 0.8}},
                           DetectionModel{SpatialExponentialDetection{}}, 1.0,
                           1.0, Domain(0.5, 4.5, 0.5, 4.5, 128, 128));
    const Plan p10 = allocate(spatial, 10.0);
    const Plan p20 = allocate(spatial, 20.0);
    const MaskedStats constancy =
        plateau_constancy(posterior(p10), p10.plateau);
    const ScalarField inc = incremental(spatial, 10.0, 10.0);
    const MaskedStats inc_stats = masked_stats(inc.values(), p10.plateau.mask);
    const double budget_rel =
        std::max(std::abs(cost(p10) - p10.budget) / p10.budget,
                 std::abs(cost(p20) - p20.budget) / p20.budget);
    const double min_increment =
        (p20.allocation.values() - p10.allocation.values()).minCoeff();
    const bool ok = constancy.rel_std > 1e-2 && inc_stats.rel_std > 1e-2 &&
                    budget_rel <= 1e-6 && min_increment >= -1e-10;
    report(6, "varying-rate counterexample", ok,
           "posterior rel_std " + num(constancy.rel_std) +
               ", increment rel_std " + num(inc_stats.rel_std) +
               ", budget rel " + num(budget_rel));
  }

  {  // 7: detection probability ladder on both analytic scenarios
    bool ok = true;
    std::string detail;
    for (const auto& [name, scenario] :
         {std::pair<const char*, const Scenario*>{"quadrant", &corner},
          {"circular", &cn}}) {
      double prev = 0.0;
      double last = 0.0;
      bool increasing = true;
      for (const double t : {1.0, 5.0, 10.0, 50.0, 200.0}) {
        const double p = detection_probability(allocate(*scenario, t));
        if (!(p > prev)) increasing = false;
        prev = p;
        last = p;
      }
      if (!(increasing && last >= 0.999)) ok = false;
      if (!detail.empty()) detail += "; ";
      detail += std::string(name) + " P(200)=" + num(last) +
                (increasing ? "" : " (not increasing)");
    }
    report(7, "detection ladder to T=200", ok, detail);
  }

  {  // 8: greedy water-filling agrees to quantum resolution
    const auto start = std::chrono::steady_clock::now();
    const Domain grid(0, 12, 0, 12, 32, 32);
    const Scenario coarse(TargetPrior{CornerExponential{}},
                          DetectionModel{ExponentialDetection{1.0}}, 1.0, 5.0,
                          grid);
    const double budget = 50.0;
    const double quantum = budget / 1e5;
    const ScalarField greedy = greedy_allocate(coarse, budget, quantum, grid);
    const Plan plan = allocate(coarse, 10.0);
    const double max_dev =
        (greedy.values() - plan.allocation.values()).abs().maxCoeff();
    const double bound = 3.0 * quantum / grid.cell_area();
    const double elapsed = seconds_since(start);
    const bool ok = max_dev <= bound && elapsed <= 60.0;
    report(8, "greedy oracle at 32^2", ok,
           "max dev " + num(max_dev) + " vs bound " + num(bound) + ", " +
               num(elapsed) + " s");
  }

  {  // 9: randomized gridded priors with varying detection rates
    std::mt19937_64 rng(20260814);
    std::uniform_int_distribution<int> cells(24, 48);
    std::uniform_real_distribution<double> extent(0.8, 1.6);
    std::uniform_real_distribution<double> level(0.05, 1.0);
    std::uniform_real_distribution<double> log_alpha(std::log(0.25),
                                                     std::log(4.0));
    std::uniform_real_distribution<double> t_first(0.2, 2.0);
    std::uniform_real_distribution<double> t_step(0.5, 2.0);

    double worst_budget = 0.0;
    double worst_waterfill = 0.0;
    double worst_mass = 0.0;
    double worst_normalizer = 0.0;
    double worst_increment = 0.0;
    bool ok = true;

    for (int trial = 0; trial < 20; ++trial) {
      const int nx = cells(rng);
      const int ny = cells(rng);
      const Domain domain(0.0, extent(rng), 0.0, extent(rng), nx, ny);
      ArrayXd values(domain.cell_count());
      for (Eigen::Index k = 0; k < values.size(); ++k) {
        values[k] = level(rng);
      }
      ScalarField raw(domain, values);
      raw = ScalarField(domain, raw.values() / integrate(raw));
      const TargetPrior prior = TargetPrior::gridded(raw);
      const double alpha = std::exp(log_alpha(rng));
      const Scenario sc(prior, DetectionModel{ExponentialDetection{alpha}},
                        1.0, 1.0, domain);

      const double t1 = t_first(rng);
      const double t2 = t1 + t_step(rng);
      const Plan p1 = allocate(sc, t1);
      const Plan p2 = allocate(sc, t2);

      for (const Plan* plan : {&p1, &p2}) {
        worst_budget = std::max(
            worst_budget, std::abs(cost(*plan) - plan->budget) / plan->budget);
        worst_waterfill =
            std::max(worst_waterfill, water_filling_deviation(sc, *plan));
        const PosteriorField post = posterior(*plan);
        worst_mass =
            std::max(worst_mass, std::abs(integrate(post.field) - 1.0));
        const double p = detection_probability(*plan);
        worst_normalizer = std::max(
            worst_normalizer, std::abs(post.normalizer - (1.0 - p)));
      }
      worst_increment = std::min(
          worst_increment,
          (p2.allocation.values() - p1.allocation.values()).minCoeff());
    }

    ok = worst_budget <= 1e-6 && worst_increment >= -1e-10 &&
         worst_waterfill <= 1e-9 && worst_mass <= 1e-6 &&
         worst_normalizer <= 1e-9;
    report(9, "randomized gridded priors", ok,
           "budget rel " + num(worst_budget) + ", water-fill " +
               num(worst_waterfill) + ", posterior mass " + num(worst_mass) +
               ", normalizer " + num(worst_normalizer) + ", min increment " +
               num(worst_increment));
  }

  return failures;
}
