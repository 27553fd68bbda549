#include "searchplan/detection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "searchplan/errors.hpp"

namespace searchplan {

namespace {

void require_nonnegative_effort(double effort_density) {
  if (!(effort_density >= 0.0)) {
    throw std::invalid_argument("effort density must be >= 0, got " +
                                std::to_string(effort_density));
  }
}

std::string point_str(Point p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

}  // namespace

DetectionModel::DetectionModel(ExponentialDetection e) : spec_(std::move(e)) {
  const auto& exp_spec = std::get<ExponentialDetection>(spec_);
  if (!(exp_spec.alpha > 0.0) || !std::isfinite(exp_spec.alpha)) {
    throw std::invalid_argument("alpha must be positive");
  }
}

DetectionModel::DetectionModel(SpatialExponentialDetection s)
    : spec_(std::move(s)) {
  const auto& spatial = std::get<SpatialExponentialDetection>(spec_);
  if (spatial.beta && (spatial.beta->values() < 0.0).any()) {
    throw std::invalid_argument("rate field must be >= 0 everywhere");
  }
}

DetectionModel::DetectionModel(GenericRegularDetection g) : spec_(std::move(g)) {
  const auto& generic = std::get<GenericRegularDetection>(spec_);
  if (!generic.prob || !generic.deriv) {
    throw std::invalid_argument("detection model needs both d and dd/dy");
  }
}

std::optional<double> exponential_rate(const DetectionModel& model, Point p) {
  if (const auto* e = model.as<ExponentialDetection>()) {
    return e->alpha;
  }
  if (const auto* s = model.as<SpatialExponentialDetection>()) {
    if (!s->beta) return p.x * p.x + p.y * p.y;
    return interpolate(*s->beta, p);
  }
  return std::nullopt;
}

double prob(const DetectionModel& model, Point p, double effort_density) {
  require_nonnegative_effort(effort_density);
  if (const auto rate = exponential_rate(model, p)) {
    return -std::expm1(-*rate * effort_density);
  }
  return model.as<GenericRegularDetection>()->prob(p, effort_density);
}

double survival(const DetectionModel& model, Point p, double effort_density) {
  require_nonnegative_effort(effort_density);
  if (const auto rate = exponential_rate(model, p)) {
    return std::exp(-*rate * effort_density);
  }
  return 1.0 - model.as<GenericRegularDetection>()->prob(p, effort_density);
}

double deriv(const DetectionModel& model, Point p, double effort_density) {
  require_nonnegative_effort(effort_density);
  if (const auto rate = exponential_rate(model, p)) {
    return *rate * std::exp(-*rate * effort_density);
  }
  return model.as<GenericRegularDetection>()->deriv(p, effort_density);
}

double deriv_inverse(const DetectionModel& model, Point p, double target) {
  if (!(target > 0.0)) {
    throw std::invalid_argument("target derivative must be > 0, got " +
                                std::to_string(target));
  }
  if (const auto rate = exponential_rate(model, p)) {
    // dd/dy = rate * e^{-rate y} = target  =>  y = ln(rate/target) / rate.
    if (*rate == 0.0) return 0.0;  // derivative is identically 0 < target
    return std::max(0.0, (std::log(*rate) - std::log(target)) / *rate);
  }

  const auto& generic = *model.as<GenericRegularDetection>();
  const double at_zero = generic.deriv(p, 0.0);
  if (target >= at_zero) return 0.0;

  // Bracket [lo, hi] with deriv(hi) <= target, expanding geometrically and
  // insisting the samples keep decreasing on the way out.
  double lo = 0.0;
  double lo_val = at_zero;
  double hi = 1.0;
  bool bracketed = false;
  for (int it = 0; it < 200; ++it) {
    const double hi_val = generic.deriv(p, hi);
    if (hi_val > lo_val) {
      throw RegularityError("dd/dy increased from " + std::to_string(lo_val) +
                            " to " + std::to_string(hi_val) + " at " +
                            point_str(p) + "; model is not regular");
    }
    if (hi_val <= target) {
      bracketed = true;
      break;
    }
    lo = hi;
    lo_val = hi_val;
    hi *= 2.0;
  }
  if (!bracketed) {
    throw RegularityError("cannot bracket dd/dy = " + std::to_string(target) +
                          " at " + point_str(p) +
                          "; derivative does not fall below the target");
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (generic.deriv(p, mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void check_regularity(const DetectionModel& model, std::span<const Point> pts) {
  constexpr int kLevels = 64;
  constexpr double kMaxEffort = 8.0;
  constexpr double kFdStep = 1e-5;
  for (const Point& p : pts) {
    if (std::abs(prob(model, p, 0.0)) > 1e-12) {
      throw RegularityError("d(x, 0) != 0 at " + point_str(p));
    }
    double prev_prob = 0.0;
    double prev_deriv = deriv(model, p, 0.0);
    const bool degenerate = prev_deriv == 0.0;  // rate-0 cells never detect
    if (prev_deriv < 0.0) {
      throw RegularityError("dd/dy negative at " + point_str(p));
    }
    for (int k = 1; k < kLevels; ++k) {
      const double y = kMaxEffort * k / (kLevels - 1);
      const double d = prob(model, p, y);
      if (d < -1e-12 || d > 1.0 + 1e-12) {
        throw RegularityError("d outside [0, 1] at " + point_str(p));
      }
      if (d < prev_prob - 1e-12) {
        throw RegularityError("d decreasing in effort at " + point_str(p));
      }
      const double dd = deriv(model, p, y);
      if (!degenerate && !(dd > 0.0)) {
        throw RegularityError("dd/dy not positive at " + point_str(p));
      }
      if (!degenerate && dd >= prev_deriv) {
        throw RegularityError("dd/dy not strictly decreasing at " +
                              point_str(p));
      }
      const double fd =
          (prob(model, p, y + kFdStep) - prob(model, p, y - kFdStep)) /
          (2.0 * kFdStep);
      if (std::abs(fd - dd) > 1e-6) {
        throw RegularityError("dd/dy inconsistent with finite differences at " +
                              point_str(p));
      }
      prev_prob = d;
      prev_deriv = dd;
    }
  }
}

}  // namespace searchplan
