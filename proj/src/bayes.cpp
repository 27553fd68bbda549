#include "searchplan/bayes.hpp"

#include <cmath>
#include <stdexcept>

#include "searchplan/metrics.hpp"

namespace searchplan {

namespace {

/// 1 - d(x, phi(x)) per cell, cancellation-free for exponential families.
ArrayXd survival_values(const Scenario& scenario, const ScalarField& allocation) {
  if (const ArrayXd* rates = scenario.exponential_rates()) {
    return (-(*rates) * allocation.values()).exp();
  }
  const Domain& domain = scenario.domain();
  ArrayXd values(allocation.values().size());
  for (std::size_t k = 0; k < domain.cell_count(); ++k) {
    values[static_cast<Eigen::Index>(k)] =
        survival(scenario.detection(), domain.center(k), allocation[k]);
  }
  return values;
}

}  // namespace

PosteriorField posterior(const Plan& plan) {
  const Scenario& scenario = plan.scenario;
  const ArrayXd numerator = survival_values(scenario, plan.allocation) *
                            scenario.prior_field().values();
  const double normalizer =
      pairwise_sum(numerator) * scenario.domain().cell_area();
  if (!(normalizer > 0.0)) {
    throw std::runtime_error("posterior normalizer is not positive");
  }

  PosteriorField post{
      ScalarField(scenario.domain(), numerator / normalizer), normalizer, {}};
  if (const auto* exp_model = scenario.detection().as<ExponentialDetection>()) {
    post.plateau_value = plan.lambda_star / (exp_model->alpha * normalizer);
  }
  return post;
}

MaskedStats plateau_constancy(const PosteriorField& post,
                              const PlateauRegion& plateau) {
  return masked_stats(post.field.values(), plateau.mask);
}

FlatteningProfile flattening_profile(const Scenario& scenario,
                                     const std::vector<double>& times) {
  if (times.empty()) {
    throw std::invalid_argument("need at least one time");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) {
      throw std::invalid_argument("times must be positive");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("times must be strictly increasing");
    }
  }

  FlatteningProfile profile;
  profile.rows.reserve(times.size());
  profile.areas_increasing = true;
  profile.sup_tracks_uniform = true;
  profile.plateau_decreasing = true;

  for (double time : times) {
    const Plan plan = allocate(scenario, time);
    const PosteriorField post = posterior(plan);
    const MaskedStats on_plateau = plateau_constancy(post, plan.plateau);

    FlatteningRow row;
    row.time = time;
    row.budget = plan.budget;
    row.lambda_star = plan.lambda_star;
    row.detection_probability = detection_probability(plan);
    row.sup_posterior = sup_norm(post.field);
    row.plateau_area = plan.plateau.area;
    row.plateau_value = post.plateau_value.value_or(on_plateau.mean);
    row.uniform_bound = 1.0 / plan.plateau.area;

    // sup over D_T <= 1/mu(D_T): the plateau's mass cannot exceed 1.
    const double sup_on_plateau = on_plateau.mean + on_plateau.max_abs_dev;
    if (!(sup_on_plateau <= row.uniform_bound * (1.0 + 1e-9))) {
      profile.sup_tracks_uniform = false;
    }
    if (!profile.rows.empty()) {
      const FlatteningRow& prev = profile.rows.back();
      if (!(row.plateau_area > prev.plateau_area)) {
        profile.areas_increasing = false;
      }
      if (!(row.plateau_value < prev.plateau_value)) {
        profile.plateau_decreasing = false;
      }
    }
    profile.rows.push_back(row);
  }
  return profile;
}

}  // namespace searchplan
