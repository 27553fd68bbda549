#pragma once

#include <optional>
#include <vector>

#include "searchplan/planner.hpp"

namespace searchplan {

/// Posterior target location density after an unsuccessful search:
/// pi_T(x) = [1 - d(x, phi(x))] pi(x) / normalizer.
struct PosteriorField {
  ScalarField field;
  /// integral of [1 - d] pi = prior mass minus detection probability; the
  /// probability the target is still undetected.
  double normalizer = 0.0;
  /// lambda* / (alpha * normalizer) when the detection model has a single
  /// global exponential rate; the level the posterior takes on the plateau.
  std::optional<double> plateau_value;
};

PosteriorField posterior(const Plan& plan);

/// How flat the posterior is on D_T: summary statistics of its restriction
/// to the plateau mask. rel_std ~ 0 certifies the water-filling identity.
MaskedStats plateau_constancy(const PosteriorField& post, const PlateauRegion& plateau);

/// One time slice of a flattening diagnostic sweep.
struct FlatteningRow {
  double time = 0.0;
  double budget = 0.0;
  double lambda_star = 0.0;
  double detection_probability = 0.0;
  double sup_posterior = 0.0;
  double plateau_area = 0.0;
  double plateau_value = 0.0;   // mean over plateau when no closed form
  double uniform_bound = 0.0;   // 1 / plateau_area
};

/// The finite-T signature of asymptotic flattening: plateau grows, posterior
/// sup shrinks toward the uniform level on D_T, plateau value decreases.
struct FlatteningProfile {
  std::vector<FlatteningRow> rows;
  bool areas_increasing = false;
  bool sup_tracks_uniform = false;   // sup_posterior <= (1 + tol) / plateau_area
  bool plateau_decreasing = false;
};

FlatteningProfile flattening_profile(const Scenario& scenario,
                                     const std::vector<double>& times);

}  // namespace searchplan
