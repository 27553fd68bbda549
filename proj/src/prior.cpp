#include "searchplan/prior.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "searchplan/errors.hpp"

namespace searchplan {

namespace {

double circular_normal_density(const CircularNormal& cn, Point p) {
  const double dx = p.x - cn.center.x;
  const double dy = p.y - cn.center.y;
  const double s2 = cn.sigma * cn.sigma;
  return std::exp(-(dx * dx + dy * dy) / (2.0 * s2)) /
         (2.0 * std::numbers::pi * s2);
}

double corner_exponential_density(const CornerExponential& ce, Point p) {
  const double u = p.x - ce.origin.x;
  const double v = p.y - ce.origin.y;
  if (u < 0.0 || v < 0.0) return 0.0;
  return std::exp(-(u + v));
}

double uniform_box_density(const UniformBox& ub, Point p) {
  if (p.x < ub.x_min || p.x > ub.x_max || p.y < ub.y_min || p.y > ub.y_max) {
    return 0.0;
  }
  return 1.0 / ((ub.x_max - ub.x_min) * (ub.y_max - ub.y_min));
}

/// Smallest L with (1 + L) e^{-L} <= tol: the quadrant-exponential mass
/// beyond the box [0, L]^2. Strictly decreasing for L > 0, so bisection.
double corner_tail_radius(double tol) {
  double lo = 0.0;
  double hi = 1.0;
  while ((1.0 + hi) * std::exp(-hi) > tol) hi *= 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((1.0 + mid) * std::exp(-mid) > tol ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

TargetPrior::TargetPrior(CircularNormal cn) : spec_(cn) {
  if (!(cn.sigma > 0.0) || !std::isfinite(cn.sigma)) {
    throw std::invalid_argument("sigma must be positive");
  }
}

TargetPrior::TargetPrior(CornerExponential ce) : spec_(ce) {}

TargetPrior::TargetPrior(UniformBox ub) : spec_(ub) {
  if (!(ub.x_min < ub.x_max) || !(ub.y_min < ub.y_max)) {
    throw std::invalid_argument("uniform box must have positive extent");
  }
}

TargetPrior TargetPrior::gridded(ScalarField raw) {
  if ((raw.values() < 0.0).any()) {
    throw ConfigError("gridded prior has negative values");
  }
  const double mass = integrate(raw);
  if (!(mass >= 0.999 && mass <= 1.001)) {
    throw ConfigError("gridded prior mass " + std::to_string(mass) +
                      " is outside the accepted band [0.999, 1.001]");
  }
  ScalarField normalized(raw.domain(), raw.values() / mass);
  return TargetPrior(Spec(GriddedPrior{std::move(normalized)}));
}

double density(const TargetPrior& prior, Point p) {
  if (const auto* cn = prior.as<CircularNormal>()) {
    return circular_normal_density(*cn, p);
  }
  if (const auto* ce = prior.as<CornerExponential>()) {
    return corner_exponential_density(*ce, p);
  }
  if (const auto* ub = prior.as<UniformBox>()) {
    return uniform_box_density(*ub, p);
  }
  const auto& gp = *prior.as<GriddedPrior>();
  return interpolate(gp.field, p);
}

ScalarField discretize(const TargetPrior& prior, const Domain& domain) {
  ArrayXd values(static_cast<Eigen::Index>(domain.cell_count()));
  for (std::size_t k = 0; k < domain.cell_count(); ++k) {
    values[static_cast<Eigen::Index>(k)] = density(prior, domain.center(k));
  }
  return ScalarField(domain, std::move(values));
}

double truncation_mass(const ScalarField& discretized) {
  return 1.0 - integrate(discretized);
}

Domain default_domain(const TargetPrior& prior, double mass_tol, int nx,
                      int ny) {
  if (!(mass_tol > 0.0 && mass_tol < 1.0)) {
    throw std::invalid_argument("mass_tol must be in (0, 1)");
  }
  if (const auto* cn = prior.as<CircularNormal>()) {
    // Radial tail of the circular normal beyond radius k*sigma is exactly
    // e^{-k^2/2}; the bounding box only shrinks the truncated mass further.
    const double k = std::sqrt(-2.0 * std::log(mass_tol));
    const double half = k * cn->sigma;
    return Domain(cn->center.x - half, cn->center.x + half, cn->center.y - half,
                  cn->center.y + half, nx, ny);
  }
  if (const auto* ce = prior.as<CornerExponential>()) {
    const double box = corner_tail_radius(mass_tol);
    return Domain(ce->origin.x, ce->origin.x + box, ce->origin.y,
                  ce->origin.y + box, nx, ny);
  }
  if (const auto* ub = prior.as<UniformBox>()) {
    return Domain(ub->x_min, ub->x_max, ub->y_min, ub->y_max, nx, ny);
  }
  // Gridded priors keep their native grid; resampling would only lose data.
  return prior.as<GriddedPrior>()->field.domain();
}

double density_rel_spread(const TargetPrior& prior, const Domain& domain) {
  const ScalarField field = discretize(prior, domain);
  const Mask support = field.values() > 0.0;
  if (!support.any()) return 0.0;
  return masked_stats(field.values(), support).rel_std;
}

}  // namespace searchplan
