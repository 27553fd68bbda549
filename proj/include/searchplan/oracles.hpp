#pragma once

#include <string>

#include "searchplan/planner.hpp"

namespace searchplan {

/// Closed forms for the circular normal prior with exponential detection
/// (alpha = 1). With H = sqrt(W*v / (pi sigma^2)), everything reduces to
/// functions of r = |x - center| and sqrt(T).
struct CircularNormalCase {
  double sigma = 1.0;
  double sweep_width = 1.0;
  double speed = 5.0;

  /// H = sqrt(W*v / (pi * sigma^2)).
  double h() const;
};

/// phi*(r, T) = max(0, sigma^2 * H * sqrt(T) - r^2 / 2) / sigma^2 ... in
/// effort-density units: max(0, H*sqrt(T) - r^2 / (2 sigma^2)).
double cn_allocation(const CircularNormalCase& c, double r, double time);

/// Radius of the disc D_T: R^2 = 2 sigma^2 H sqrt(T).
double cn_plateau_radius(const CircularNormalCase& c, double time);

/// P[phi*] = 1 - (1 + H sqrt(T)) exp(-H sqrt(T)).
double cn_detection_probability(const CircularNormalCase& c, double time);

/// lambda* = q(0,0) * exp(-H sqrt(T)) with q(0,0) = 1 / (2 pi sigma^2).
double cn_threshold(const CircularNormalCase& c, double time);

/// Posterior density at radius r after an unsuccessful search to time T.
double cn_posterior(const CircularNormalCase& c, double r, double time);

/// Effort density added at radius r over [T, T + dt]; on D_T this is
/// H (sqrt(T+dt) - sqrt(T)), independent of r.
double cn_incremental(const CircularNormalCase& c, double r, double time,
                      double dt);

/// Closed forms for pi(x1,x2) = exp(-(x1+x2)) on the first quadrant with
/// exponential detection (alpha = 1). With B = (6 E)^{1/3}, E = W*v*T:
struct CornerExponentialCase {
  double sweep_width = 1.0;
  double speed = 5.0;

  double b(double time) const;  // (6 W v T)^{1/3}
};

/// Q(lambda) = -(ln lambda)^3 / 6 for lambda in (0, 1].
double corner_total_allocation(double lambda);

/// lambda* = exp(-B).
double corner_threshold(const CornerExponentialCase& c, double time);

/// phi*(x1, x2, T) = max(0, B - x1 - x2).
double corner_allocation(const CornerExponentialCase& c, double x1, double x2,
                         double time);

/// P[phi*] = 1 - (1 + B + B^2/2) exp(-B).
double corner_detection_probability(const CornerExponentialCase& c, double time);

/// Area of D_T = {x1 + x2 <= B, x >= 0}: B^2 / 2.
double corner_plateau_area(const CornerExponentialCase& c, double time);

/// Posterior level on D_T: lambda* / normalizer with normalizer = 1 - P.
double corner_plateau_value(const CornerExponentialCase& c, double time);

/// Brute-force water-filling: rebuild the scenario on the (coarse) grid and
/// repeatedly drop a quantum of effort on the cell with the highest marginal
/// attractiveness (ties to the lowest row-major index). Independent of the
/// threshold machinery; used to cross-check it. Requires quantum > 0,
/// budget / quantum <= 1e7 steps, and at most 64 x 64 cells.
ScalarField greedy_allocate(const Scenario& scenario, double budget,
                            double quantum, const Domain& grid);

/// Deviation of a computed plan from an oracle allocation on the same grid.
struct OracleComparison {
  std::string case_name;
  double time = 0.0;
  double sup_err_allocation = 0.0;
  double err_detection_probability = 0.0;
  double err_plateau_area = 0.0;
};

OracleComparison compare_circular_normal(const Plan& plan,
                                         const CircularNormalCase& c);
OracleComparison compare_corner_exponential(const Plan& plan,
                                            const CornerExponentialCase& c);

}  // namespace searchplan
