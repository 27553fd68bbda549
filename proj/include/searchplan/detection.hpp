#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>

#include "searchplan/field.hpp"

namespace searchplan {

// Detection models d(x, y): the conditional probability of detecting the
// target at x given effort density y there. All built-in models are regular:
// d(x,0) = 0 and dd/dy is continuous, positive, and strictly decreasing in y.

/// d(x, y) = 1 - e^{-alpha y}, the same at every point.
struct ExponentialDetection {
  double alpha = 1.0;
};

/// d(x, y) = 1 - e^{-beta(x) y} with a point-dependent rate. The rate is
/// ||x||^2 when no field is supplied, or bilinear interpolation of the given
/// field. Cells with beta(x) = 0 are permitted; they can never be detected
/// and are never allocated effort.
struct SpatialExponentialDetection {
  std::optional<ScalarField> beta;
};

/// User-supplied d and dd/dy. Regularity is asserted by the caller and
/// spot-checked by sampling, not proven.
struct GenericRegularDetection {
  std::function<double(Point, double)> prob;   // d(x, y)
  std::function<double(Point, double)> deriv;  // dd/dy at (x, y)
};

class DetectionModel {
 public:
  explicit DetectionModel(ExponentialDetection e);
  explicit DetectionModel(SpatialExponentialDetection s);
  explicit DetectionModel(GenericRegularDetection g);

  using Spec = std::variant<ExponentialDetection, SpatialExponentialDetection,
                            GenericRegularDetection>;
  const Spec& spec() const { return spec_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&spec_);
  }

 private:
  Spec spec_;
};

/// d(x, y). Throws std::invalid_argument for negative effort density.
double prob(const DetectionModel& model, Point p, double effort_density);

/// 1 - d(x, y), computed without cancellation for the exponential families.
double survival(const DetectionModel& model, Point p, double effort_density);

/// dd/dy at (x, y).
double deriv(const DetectionModel& model, Point p, double effort_density);

/// The unique y >= 0 with dd/dy(x, y) = target, or 0 when the target already
/// exceeds dd/dy(x, 0). Closed form for the exponential families; bracketed
/// bisection to 1e-12 relative otherwise. Throws RegularityError if the
/// sampled derivative is non-monotone or cannot be bracketed.
double deriv_inverse(const DetectionModel& model, Point p, double target);

/// alpha (Exponential) or beta(x) (SpatialExponential); nullopt for generic
/// models. A present rate means the closed-form water-filling path applies.
std::optional<double> exponential_rate(const DetectionModel& model, Point p);

/// Sampling check of the regularity hypotheses at the given points: d(x,0)=0,
/// 0 <= d <= 1, dd/dy positive and strictly decreasing, d increasing, and the
/// derivative consistent with finite differences. 64 effort levels per point.
/// Throws RegularityError on the first violation.
void check_regularity(const DetectionModel& model, std::span<const Point> pts);

}  // namespace searchplan
