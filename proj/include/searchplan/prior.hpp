#pragma once

#include <variant>

#include "searchplan/field.hpp"

namespace searchplan {

// Target-distribution families. Analytic variants evaluate their density
// exactly; Gridded wraps a probability map supplied as a ScalarField.

struct CircularNormal {
  Point center{0.0, 0.0};
  double sigma = 1.0;
};

/// Density e^{-((x-ox)+(y-oy))} on the closed quadrant x>=ox, y>=oy, zero
/// elsewhere.
struct CornerExponential {
  Point origin{0.0, 0.0};
};

struct UniformBox {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
};

struct GriddedPrior {
  ScalarField field;  // normalized to unit mass at load
};

class TargetPrior {
 public:
  explicit TargetPrior(CircularNormal cn);
  explicit TargetPrior(CornerExponential ce);
  explicit TargetPrior(UniformBox ub);

  /// Validates a supplied probability map: values must be non-negative and
  /// integrate to 1 within 1e-3 (quadrature noise in third-party maps is
  /// tolerated and renormalized away; anything further off is rejected with
  /// ConfigError).
  static TargetPrior gridded(ScalarField raw);

  using Spec =
      std::variant<CircularNormal, CornerExponential, UniformBox, GriddedPrior>;
  const Spec& spec() const { return spec_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&spec_);
  }

 private:
  explicit TargetPrior(Spec spec) : spec_(std::move(spec)) {}
  Spec spec_;
};

/// Exact analytic density, or bilinear interpolation for Gridded (out-of-domain
/// Gridded queries throw std::domain_error).
double density(const TargetPrior& prior, Point p);

/// Density sampled at the cell centers of `domain`. The truncation mass is
/// 1 - integrate(result).
ScalarField discretize(const TargetPrior& prior, const Domain& domain);

double truncation_mass(const ScalarField& discretized);

/// A box holding all but `mass_tol` of the prior mass, discretized nx-by-ny.
/// CircularNormal: center +- k*sigma with e^{-k^2/2} = mass_tol (the box
/// strictly contains the bounding disc, so the truncated mass is < mass_tol).
/// CornerExponential: [0,L]^2 from the origin with (1+L)e^{-L} = mass_tol.
/// UniformBox and Gridded return their own box; Gridded keeps its own grid.
Domain default_domain(const TargetPrior& prior, double mass_tol,
                      int nx = 512, int ny = 512);

/// Relative standard deviation of the density over its support cells.
double density_rel_spread(const TargetPrior& prior, const Domain& domain);

/// Executable form of "the target distribution is non-uniform".
inline bool is_nonuniform(const TargetPrior& prior, const Domain& domain) {
  return density_rel_spread(prior, domain) > 1e-9;
}

}  // namespace searchplan
