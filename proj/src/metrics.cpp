#include "searchplan/metrics.hpp"

#include <stdexcept>

namespace searchplan {

double detection_probability(const Scenario& scenario,
                             const ScalarField& allocation) {
  if (allocation.domain() != scenario.domain()) {
    throw std::invalid_argument("allocation grid does not match the scenario");
  }
  if ((allocation.values() < 0.0).any()) {
    throw std::invalid_argument("allocation must be >= 0 everywhere");
  }
  ArrayXd detected(allocation.values().size());
  if (const ArrayXd* rates = scenario.exponential_rates()) {
    detected = -(-(*rates) * allocation.values()).expm1();
  } else {
    const Domain& domain = scenario.domain();
    for (std::size_t k = 0; k < domain.cell_count(); ++k) {
      detected[static_cast<Eigen::Index>(k)] =
          prob(scenario.detection(), domain.center(k), allocation[k]);
    }
  }
  return pairwise_sum(detected * scenario.prior_field().values()) *
         scenario.domain().cell_area();
}

double detection_probability(const Plan& plan) {
  return detection_probability(plan.scenario, plan.allocation);
}

double cost(const ScalarField& allocation) { return integrate(allocation); }

double cost(const Plan& plan) { return cost(plan.allocation); }

MaskedStats uniformity(const ScalarField& field, const PlateauRegion& region) {
  return masked_stats(field.values(), region.mask);
}

PlanReport report(const Plan& plan) {
  PlanReport r;
  r.time = plan.time;
  r.budget = plan.budget;
  r.lambda_star = plan.lambda_star;
  r.detection_probability = detection_probability(plan);
  r.cost = cost(plan);
  r.budget_residual = plan.budget_residual;
  r.plateau_area = plan.plateau.area;
  r.plateau_cells = plan.plateau.cell_count;
  r.truncation_mass = plan.scenario.truncation_mass();
  return r;
}

}  // namespace searchplan
