#include "searchplan/planner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "searchplan/errors.hpp"

namespace searchplan {

namespace {

// Generic (non-exponential) evaluations underflow once e^u rounds to zero;
// stop searching there and call the budget infeasible.
constexpr double kLogLambdaFloor = -700.0;

constexpr double kResidualRelTol = 1e-12;
constexpr int kMaxIterations = 200;

}  // namespace

struct Scenario::Impl {
  TargetPrior prior;
  DetectionModel detection;
  double sweep_width;
  double speed;
  Domain domain;
  ScenarioOptions options;

  ScalarField prior_field;  // renormalized iff options.renormalize_prior
  double truncation_mass = 0.0;
  double renorm_factor = 1.0;  // prior_density multiplier

  ArrayXd q0;  // pi(x) * dd/dy(x, 0) at cell centers
  double max_q0 = 0.0;

  // Fast path for the exponential families; empty for generic models.
  bool exponential_family = false;
  ArrayXd rates;      // alpha or beta(x)
  ArrayXd inv_rates;  // 0 where the rate is 0 (those cells never allocate)
  ArrayXd log_q0;     // -inf where q0 = 0

  Impl(TargetPrior prior_in, DetectionModel detection_in, double w, double v,
       Domain domain_in, ScenarioOptions options_in)
      : prior(std::move(prior_in)),
        detection(std::move(detection_in)),
        sweep_width(w),
        speed(v),
        domain(domain_in),
        options(options_in),
        prior_field(discretize(prior, domain)) {
    if (!(sweep_width > 0.0) || !std::isfinite(sweep_width)) {
      throw std::invalid_argument("sweep width must be positive");
    }
    if (!(speed > 0.0) || !std::isfinite(speed)) {
      throw std::invalid_argument("speed must be positive");
    }
    const double raw_mass = integrate(prior_field);
    truncation_mass = 1.0 - raw_mass;
    if (!(raw_mass > 0.0)) {
      throw std::invalid_argument("prior has no mass on the domain");
    }
    if (options.renormalize_prior) {
      renorm_factor = 1.0 / raw_mass;
      prior_field = ScalarField(domain, prior_field.values() * renorm_factor);
    }

    const Eigen::Index n = prior_field.values().size();
    exponential_family =
        exponential_rate(detection, domain.center(0)).has_value();
    if (exponential_family) {
      rates.resize(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        rates[k] = *exponential_rate(detection,
                                     domain.center(static_cast<std::size_t>(k)));
      }
      if ((rates < 0.0).any()) {
        throw RegularityError("detection rate is negative at some cell");
      }
      q0 = prior_field.values() * rates;
      inv_rates = (rates > 0.0).select(rates.inverse(), ArrayXd::Zero(n));
      log_q0 = q0.log();  // log(0) = -inf marks never-allocated cells
    } else {
      q0.resize(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        q0[k] = prior_field[static_cast<std::size_t>(k)] *
                deriv(detection, domain.center(static_cast<std::size_t>(k)), 0.0);
      }
      if ((q0 < 0.0).any()) {
        throw RegularityError("dd/dy(x, 0) is negative at some cell");
      }
    }
    max_q0 = q0.size() == 0 ? 0.0 : q0.maxCoeff();
  }

  /// phi(x) = q_x^{-1}(e^u) per cell, for u = ln(lambda).
  ArrayXd allocation_at(double u) const {
    if (exponential_family) {
      // (log q0 - u)^+ / rate; cells with q0 = 0 have log_q0 = -inf and the
      // max() turns them into exact zeros before the rate multiply.
      return (log_q0 - u).max(0.0) * inv_rates;
    }
    const double lambda = std::exp(u);
    ArrayXd result(q0.size());
    for (Eigen::Index k = 0; k < q0.size(); ++k) {
      if (q0[k] <= 0.0 || lambda >= q0[k]) {
        result[k] = 0.0;
        continue;
      }
      const std::size_t cell = static_cast<std::size_t>(k);
      result[k] =
          deriv_inverse(detection, domain.center(cell), lambda / prior_field[cell]);
    }
    return result;
  }

  double total_at(double u) const {
    return pairwise_sum(allocation_at(u)) * domain.cell_area();
  }

  /// Bisection for Q(e^u) = budget on u = ln(lambda), returning the best
  /// (u, residual) seen. Q is non-increasing in u, so the bracket keeps
  /// Q(u_lo) >= budget >= Q(u_hi).
  std::pair<double, double> solve_log_threshold(double budget) const {
    if (!(budget > 0.0)) {
      throw std::invalid_argument("budget must be > 0");
    }
    if (!(max_q0 > 0.0)) {
      throw InfeasibleBudgetError(budget, 0.0);
    }

    const double u_top = std::log(max_q0);  // Q = 0 here
    double u_hi = u_top;
    double best_u = u_hi;
    double best_residual = budget;

    const auto consider = [&](double u, double total) {
      const double residual = std::abs(total - budget);
      if (residual < best_residual) {
        best_residual = residual;
        best_u = u;
      }
      return residual;
    };

    // Expand the lower bracket geometrically: halve lambda first, then keep
    // doubling the log-gap until Q reaches the budget.
    double gap = std::numbers::ln2;
    double u_lo = u_top - gap;
    double total_lo = total_at(u_lo);
    consider(u_lo, total_lo);
    for (int it = 0; total_lo < budget; ++it) {
      const bool floored = !exponential_family && u_lo <= kLogLambdaFloor;
      if (it >= kMaxIterations || floored) {
        throw InfeasibleBudgetError(budget, total_lo);
      }
      gap *= 2.0;
      u_lo = u_top - gap;
      if (!exponential_family) u_lo = std::max(u_lo, kLogLambdaFloor);
      total_lo = total_at(u_lo);
      consider(u_lo, total_lo);
    }

    for (int it = 0; it < kMaxIterations; ++it) {
      if (best_residual <= kResidualRelTol * budget) break;
      const double width = u_hi - u_lo;
      if (width <= 8.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(u_lo))) {
        break;
      }
      const double u_mid = 0.5 * (u_lo + u_hi);
      const double total_mid = total_at(u_mid);
      consider(u_mid, total_mid);
      if (total_mid >= budget) {
        u_lo = u_mid;
      } else {
        u_hi = u_mid;
      }
    }
    return {best_u, best_residual};
  }
};

Scenario::Scenario(TargetPrior prior, DetectionModel detection,
                   double sweep_width, double speed, Domain domain,
                   ScenarioOptions options)
    : impl_(std::make_shared<const Impl>(std::move(prior), std::move(detection),
                                         sweep_width, speed, domain, options)) {}

const TargetPrior& Scenario::prior() const { return impl_->prior; }
const DetectionModel& Scenario::detection() const { return impl_->detection; }
const Domain& Scenario::domain() const { return impl_->domain; }
double Scenario::sweep_width() const { return impl_->sweep_width; }
double Scenario::speed() const { return impl_->speed; }
const ScenarioOptions& Scenario::options() const { return impl_->options; }

double Scenario::budget(double time) const {
  if (!(time >= 0.0)) {
    throw std::invalid_argument("time must be >= 0");
  }
  return impl_->sweep_width * impl_->speed * time;
}

const ScalarField& Scenario::prior_field() const { return impl_->prior_field; }
double Scenario::truncation_mass() const { return impl_->truncation_mass; }

double Scenario::prior_density(Point p) const {
  return impl_->renorm_factor * density(impl_->prior, p);
}

const ArrayXd& Scenario::initial_attractiveness() const { return impl_->q0; }
double Scenario::max_initial_attractiveness() const { return impl_->max_q0; }

const ArrayXd* Scenario::exponential_rates() const {
  return impl_->exponential_family ? &impl_->rates : nullptr;
}

const ArrayXd* Scenario::log_initial_attractiveness() const {
  return impl_->exponential_family ? &impl_->log_q0 : nullptr;
}

double attractiveness(const Scenario& scenario, Point p,
                      double effort_density) {
  return scenario.prior_density(p) *
         deriv(scenario.detection(), p, effort_density);
}

double attractiveness_inverse(const Scenario& scenario, Point p,
                              double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("lambda must be > 0");
  }
  const double pi_x = scenario.prior_density(p);
  if (pi_x <= 0.0) return 0.0;
  return deriv_inverse(scenario.detection(), p, lambda / pi_x);
}

double total_allocation_at(const Scenario& scenario, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("lambda must be > 0");
  }
  return scenario.impl_->total_at(std::log(lambda));
}

double threshold(const Scenario& scenario, double budget) {
  return std::max(std::exp(scenario.impl_->solve_log_threshold(budget).first),
                  std::numeric_limits<double>::min());
}

Plan allocate(const Scenario& scenario, double time) {
  const Scenario::Impl& impl = *scenario.impl_;
  if (!(time >= 0.0)) {
    throw std::invalid_argument("time must be >= 0");
  }
  if (time == 0.0) {
    // No budget yet: the threshold sits at the top of the attractiveness
    // range and nothing is allocated.
    if (!(impl.max_q0 > 0.0)) {
      throw InfeasibleBudgetError(0.0, 0.0);
    }
    const double lambda_star = impl.max_q0;
    return Plan{scenario,
                time,
                0.0,
                lambda_star,
                ScalarField::zero(impl.domain),
                plateau_region(scenario, lambda_star),
                0.0};
  }
  const double budget = scenario.budget(time);
  const auto [log_lambda, residual] = impl.solve_log_threshold(budget);
  // Budgets huge enough to underflow e^{log_lambda} saturate the threshold
  // at the smallest normal double: every cell with q0 > 0 is supported then.
  const double lambda_star =
      std::max(std::exp(log_lambda), std::numeric_limits<double>::min());
  PlateauRegion plateau = plateau_region(scenario, lambda_star);
  ArrayXd values = impl.allocation_at(log_lambda);
  // The mask compares q0 against e^{log_lambda}; the allocation compares
  // log q0 against log_lambda. Rounding can disagree by one ulp at the level
  // set, so zero the mask's complement: "allocation = 0 outside the plateau"
  // then holds exactly, and the budget shift is below quadrature resolution.
  values = plateau.mask.select(values, 0.0);
  return Plan{scenario,
              time,
              budget,
              lambda_star,
              ScalarField(impl.domain, std::move(values)),
              std::move(plateau),
              residual};
}

ScalarField incremental(const Scenario& scenario, double time, double dt) {
  if (!(time >= 0.0)) {
    throw std::invalid_argument("time must be >= 0");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("time increment must be > 0");
  }
  const Plan before = allocate(scenario, time);
  const Plan after = allocate(scenario, time + dt);
  // Analytically non-negative (thresholds fall as budgets grow); the max
  // guards the exact zeros against last-ulp noise.
  return ScalarField(
      scenario.domain(),
      (after.allocation.values() - before.allocation.values()).max(0.0));
}

PlateauRegion plateau_region(const Scenario& scenario, double lambda_star) {
  if (!(lambda_star > 0.0)) {
    throw std::invalid_argument("lambda must be > 0");
  }
  PlateauRegion region;
  region.mask = scenario.initial_attractiveness() >= lambda_star;
  region.cell_count = static_cast<std::size_t>(region.mask.count());
  region.area = static_cast<double>(region.cell_count) *
                scenario.domain().cell_area();
  return region;
}

}  // namespace searchplan
