#pragma once

#include <stdexcept>
#include <string>

namespace searchplan {

/// Scenario configuration, config file, or CSV input that fails validation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested budget exceeds what the detection model can absorb on the
/// domain (total required allocation Q is bounded above).
class InfeasibleBudgetError : public std::runtime_error {
 public:
  InfeasibleBudgetError(double requested, double max_absorbable)
      : std::runtime_error("infeasible budget: requested effort " +
                           std::to_string(requested) +
                           " exceeds the maximum absorbable effort " +
                           std::to_string(max_absorbable)),
        requested_(requested),
        max_absorbable_(max_absorbable) {}

  double requested() const { return requested_; }
  double max_absorbable() const { return max_absorbable_; }

 private:
  double requested_;
  double max_absorbable_;
};

/// A detection model violated regularity: the effort derivative of the
/// detection function must be positive and strictly decreasing.
class RegularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace searchplan
