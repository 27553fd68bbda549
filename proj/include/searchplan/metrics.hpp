#pragma once

#include "searchplan/planner.hpp"

namespace searchplan {

/// P[f] = integral of d(x, f(x)) pi(x): probability the allocation finds the
/// target. Accepts any non-negative allocation on the scenario's domain, not
/// just planner output, so suboptimal baselines can be scored too.
double detection_probability(const Scenario& scenario,
                             const ScalarField& allocation);
double detection_probability(const Plan& plan);

/// C[f] = integral of the allocation (unit effort cost). For planner output
/// this equals the budget up to budget_residual.
double cost(const ScalarField& allocation);
double cost(const Plan& plan);

/// Flatness of a field restricted to a region: mean, max |dev|, rel_std of
/// the masked values. Throws std::invalid_argument on an empty region.
MaskedStats uniformity(const ScalarField& field, const PlateauRegion& region);

/// Everything a caller typically reports about one plan.
struct PlanReport {
  double time = 0.0;
  double budget = 0.0;
  double lambda_star = 0.0;
  double detection_probability = 0.0;
  double cost = 0.0;
  double budget_residual = 0.0;
  double plateau_area = 0.0;
  std::size_t plateau_cells = 0;
  double truncation_mass = 0.0;
};

PlanReport report(const Plan& plan);

}  // namespace searchplan
