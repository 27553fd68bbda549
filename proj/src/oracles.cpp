#include "searchplan/oracles.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

#include "searchplan/metrics.hpp"

namespace searchplan {

double CircularNormalCase::h() const {
  return std::sqrt(sweep_width * speed / (std::numbers::pi * sigma * sigma));
}

double cn_allocation(const CircularNormalCase& c, double r, double time) {
  const double s = c.h() * std::sqrt(time);
  return std::max(0.0, s - r * r / (2.0 * c.sigma * c.sigma));
}

double cn_plateau_radius(const CircularNormalCase& c, double time) {
  return c.sigma * std::sqrt(2.0 * c.h() * std::sqrt(time));
}

double cn_detection_probability(const CircularNormalCase& c, double time) {
  // 1 - (1 + s) e^{-s}, arranged to avoid cancellation near s = 0.
  const double s = c.h() * std::sqrt(time);
  return -std::expm1(-s) - s * std::exp(-s);
}

double cn_threshold(const CircularNormalCase& c, double time) {
  const double s = c.h() * std::sqrt(time);
  return std::exp(-s) / (2.0 * std::numbers::pi * c.sigma * c.sigma);
}

double cn_posterior(const CircularNormalCase& c, double r, double time) {
  const double s = c.h() * std::sqrt(time);
  const double two_pi_s2 = 2.0 * std::numbers::pi * c.sigma * c.sigma;
  if (r <= cn_plateau_radius(c, time)) {
    return 1.0 / (two_pi_s2 * (1.0 + s));
  }
  // pi(r) / [(1 + s) e^{-s}]
  const double z = r * r / (2.0 * c.sigma * c.sigma);
  return std::exp(s - z) / (two_pi_s2 * (1.0 + s));
}

double cn_incremental(const CircularNormalCase& c, double r, double time,
                      double dt) {
  return cn_allocation(c, r, time + dt) - cn_allocation(c, r, time);
}

double CornerExponentialCase::b(double time) const {
  return std::cbrt(6.0 * sweep_width * speed * time);
}

double corner_total_allocation(double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("lambda must be > 0");
  }
  const double l = std::log(lambda);
  if (l >= 0.0) return 0.0;
  return -(l * l * l) / 6.0;
}

double corner_threshold(const CornerExponentialCase& c, double time) {
  return std::exp(-c.b(time));
}

double corner_allocation(const CornerExponentialCase& c, double x1, double x2,
                         double time) {
  if (x1 < 0.0 || x2 < 0.0) return 0.0;
  return std::max(0.0, c.b(time) - x1 - x2);
}

double corner_detection_probability(const CornerExponentialCase& c,
                                    double time) {
  const double b = c.b(time);
  return 1.0 - (1.0 + b + 0.5 * b * b) * std::exp(-b);
}

double corner_plateau_area(const CornerExponentialCase& c, double time) {
  const double b = c.b(time);
  return 0.5 * b * b;
}

double corner_plateau_value(const CornerExponentialCase& c, double time) {
  const double b = c.b(time);
  return 1.0 / (1.0 + b + 0.5 * b * b);
}

ScalarField greedy_allocate(const Scenario& scenario, double budget,
                            double quantum, const Domain& grid) {
  if (!(budget > 0.0)) {
    throw std::invalid_argument("budget must be > 0");
  }
  if (!(quantum > 0.0)) {
    throw std::invalid_argument("quantum must be > 0");
  }
  if (budget / quantum > 1e7) {
    throw std::invalid_argument("budget/quantum exceeds the 1e7 step limit");
  }
  if (grid.cell_count() > 64 * 64) {
    throw std::invalid_argument("greedy oracle is limited to 64x64 grids");
  }

  const Scenario coarse(scenario.prior(), scenario.detection(),
                        scenario.sweep_width(), scenario.speed(), grid,
                        scenario.options());
  const ArrayXd& q0 = coarse.initial_attractiveness();
  const ArrayXd* rates = coarse.exponential_rates();
  const Eigen::Index n = q0.size();

  ArrayXd effort = ArrayXd::Zero(n);
  const auto gain = [&](Eigen::Index k) {
    if (rates) return q0[k] * std::exp(-(*rates)[k] * effort[k]);
    return coarse.prior_field()[static_cast<std::size_t>(k)] *
           deriv(coarse.detection(), grid.center(static_cast<std::size_t>(k)),
                 effort[k]);
  };

  // Max-heap on (gain, cell); ties go to the lowest row-major index. Only the
  // popped cell's gain changes per step, so entries never go stale.
  struct Entry {
    double gain;
    Eigen::Index cell;
    bool operator<(const Entry& other) const {
      if (gain != other.gain) return gain < other.gain;
      return cell > other.cell;
    }
  };
  std::priority_queue<Entry> heap;
  for (Eigen::Index k = 0; k < n; ++k) {
    heap.push({gain(k), k});
  }

  const double step_density = quantum / grid.cell_area();
  const auto drop = [&](double density) {
    const Entry top = heap.top();
    heap.pop();
    effort[top.cell] += density;
    heap.push({gain(top.cell), top.cell});
  };

  const auto steps = static_cast<long long>(budget / quantum);
  for (long long s = 0; s < steps; ++s) {
    drop(step_density);
  }
  const double remainder = budget - static_cast<double>(steps) * quantum;
  if (remainder > 1e-9 * quantum) {
    drop(remainder / grid.cell_area());
  }
  return ScalarField(grid, std::move(effort));
}

namespace {

OracleComparison compare_allocation(
    const Plan& plan, const std::string& case_name, double oracle_p,
    double oracle_area,
    const std::function<double(Point)>& oracle_allocation) {
  OracleComparison cmp;
  cmp.case_name = case_name;
  cmp.time = plan.time;
  const Domain& domain = plan.scenario.domain();
  double sup_err = 0.0;
  for (std::size_t k = 0; k < domain.cell_count(); ++k) {
    sup_err = std::max(
        sup_err, std::abs(plan.allocation[k] - oracle_allocation(domain.center(k))));
  }
  cmp.sup_err_allocation = sup_err;
  cmp.err_detection_probability =
      std::abs(detection_probability(plan) - oracle_p);
  cmp.err_plateau_area = std::abs(plan.plateau.area - oracle_area);
  return cmp;
}

}  // namespace

OracleComparison compare_circular_normal(const Plan& plan,
                                         const CircularNormalCase& c) {
  Point center{0.0, 0.0};
  if (const auto* cn = plan.scenario.prior().as<CircularNormal>()) {
    center = cn->center;
  }
  const double radius = cn_plateau_radius(c, plan.time);
  return compare_allocation(
      plan, "circular_normal", cn_detection_probability(c, plan.time),
      std::numbers::pi * radius * radius, [&](Point p) {
        const double r = std::hypot(p.x - center.x, p.y - center.y);
        return cn_allocation(c, r, plan.time);
      });
}

OracleComparison compare_corner_exponential(const Plan& plan,
                                            const CornerExponentialCase& c) {
  Point origin{0.0, 0.0};
  if (const auto* ce = plan.scenario.prior().as<CornerExponential>()) {
    origin = ce->origin;
  }
  return compare_allocation(
      plan, "corner_exponential", corner_detection_probability(c, plan.time),
      corner_plateau_area(c, plan.time), [&](Point p) {
        return corner_allocation(c, p.x - origin.x, p.y - origin.y, plan.time);
      });
}

}  // namespace searchplan
