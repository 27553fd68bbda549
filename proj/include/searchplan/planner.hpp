#pragma once

#include <memory>

#include "searchplan/detection.hpp"
#include "searchplan/field.hpp"
#include "searchplan/prior.hpp"

namespace searchplan {

struct Plan;

struct ScenarioOptions {
  /// Rescale the discretized prior to unit mass on the (truncated) domain.
  /// Off by default so closed-form oracles stay directly comparable.
  bool renormalize_prior = false;
  double mass_tol = 1e-5;
};

/// A full problem statement: prior, detection model, sensor parameters, and
/// the discretization domain. Immutable and cheap to copy; the discretized
/// prior and the initial attractiveness q_x(0) are cached at construction.
class Scenario {
 public:
  Scenario(TargetPrior prior, DetectionModel detection, double sweep_width,
           double speed, Domain domain, ScenarioOptions options = {});

  const TargetPrior& prior() const;
  const DetectionModel& detection() const;
  const Domain& domain() const;
  double sweep_width() const;
  double speed() const;
  const ScenarioOptions& options() const;

  /// Cumulative effort available by time T: E(T) = W*v*T.
  double budget(double time) const;

  /// pi at cell centers (renormalized iff the option is set).
  const ScalarField& prior_field() const;
  /// Prior mass lost to domain truncation, before any renormalization.
  double truncation_mass() const;
  /// pi(x) at an arbitrary point, consistent with prior_field at centers.
  double prior_density(Point p) const;

  /// q_x(0) = pi(x) * dd/dy(x, 0) per cell.
  const ArrayXd& initial_attractiveness() const;
  double max_initial_attractiveness() const;

  /// Per-cell exponential rates (alpha or beta(x)) when the detection model
  /// is of exponential type; nullptr for generic models.
  const ArrayXd* exponential_rates() const;
  /// log q_x(0) per cell, -inf where q_x(0) = 0. Only present alongside
  /// exponential_rates().
  const ArrayXd* log_initial_attractiveness() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;

  friend double total_allocation_at(const Scenario&, double);
  friend double threshold(const Scenario&, double);
  friend Plan allocate(const Scenario&, double);
};

/// D_T = {x : lambda* <= q_x(0)} as a cell mask.
struct PlateauRegion {
  Mask mask;
  std::size_t cell_count = 0;
  double area = 0.0;  // cell_count * cell_area
};

/// A uniformly optimal allocation at one time, with its Lagrange threshold
/// and budget accounting.
struct Plan {
  Scenario scenario;
  double time = 0.0;
  double budget = 0.0;       // E(T) = W*v*T
  double lambda_star = 0.0;  // Q^{-1}(E(T))
  ScalarField allocation;
  PlateauRegion plateau;
  double budget_residual = 0.0;  // |integrate(allocation) - budget|
};

/// q_x(y) = pi(x) * dd/dy(x, y): the marginal detection payoff of more effort
/// at x given y already placed there.
double attractiveness(const Scenario& scenario, Point p, double effort_density);

/// q_x^{-1}(lambda): the effort density already required at x so the
/// attractiveness of further effort has dropped to lambda; 0 where
/// lambda > q_x(0) (and wherever pi(x) = 0).
double attractiveness_inverse(const Scenario& scenario, Point p, double lambda);

/// Q(lambda) = integral of q_x^{-1}(lambda) over the domain. Strictly
/// decreasing in lambda below max_x q_x(0), zero at and above it.
double total_allocation_at(const Scenario& scenario, double lambda);

/// lambda* = Q^{-1}(E): bracketed bisection on ln(lambda) until
/// Q(lambda*) = E to 1e-9 relative (cap 200 iterations). Throws
/// std::invalid_argument for E <= 0 and InfeasibleBudgetError when Q is
/// bounded above by less than E.
double threshold(const Scenario& scenario, double budget);

/// The uniformly optimal plan at time T: allocation(x) = q_x^{-1}(lambda*)
/// with lambda* = Q^{-1}(E(T)). T = 0 yields the zero plan.
Plan allocate(const Scenario& scenario, double time);

/// Additional effort density accumulated over [T, T+t]: cellwise
/// allocate(T+t) - allocate(T). Non-negative everywhere; constant on D_T for
/// exponential detection.
ScalarField incremental(const Scenario& scenario, double time, double dt);

PlateauRegion plateau_region(const Scenario& scenario, double lambda_star);

}  // namespace searchplan
