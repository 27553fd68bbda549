#pragma once

#include <Eigen/Core>
#include <cstddef>

#include "searchplan/geometry.hpp"

namespace searchplan {

using ArrayXd = Eigen::ArrayXd;
using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Values of a real function sampled at the cell centers of a Domain.
///
/// The value array is immutable after construction; all finite values are
/// accepted (non-negativity is enforced by the consumers that need it, e.g.
/// priors and allocations).
class ScalarField {
 public:
  /// Throws std::invalid_argument if the size does not match the domain or
  /// any value is not finite.
  ScalarField(Domain domain, ArrayXd values);

  static ScalarField constant(const Domain& domain, double value);
  static ScalarField zero(const Domain& domain) { return constant(domain, 0.0); }

  const Domain& domain() const { return domain_; }
  const ArrayXd& values() const { return values_; }
  double operator[](std::size_t k) const { return values_[static_cast<Eigen::Index>(k)]; }

 private:
  Domain domain_;
  ArrayXd values_;
};

/// Deterministic pairwise summation; run-to-run stable and O(log n) error
/// growth instead of O(n).
double pairwise_sum(const double* data, std::ptrdiff_t n);
double pairwise_sum(const ArrayXd& values);

/// Midpoint-rule integral over the domain: sum(values) * cell_area.
/// Exact for fields constant per cell.
double integrate(const ScalarField& field);

/// max |value| over all cells.
double sup_norm(const ScalarField& field);

/// Bilinear interpolation between cell centers. Points inside the domain box
/// but within half a cell of the boundary use the edge-cell value along the
/// clamped axis. Points outside the domain throw std::domain_error.
double interpolate(const ScalarField& field, Point p);

struct MaskedStats {
  double mean = 0.0;
  double max_abs_dev = 0.0;  // max |v - mean| over masked cells
  double rel_std = 0.0;      // population std / |mean|
  std::size_t count = 0;
};

/// Statistics of the values selected by the mask.
/// Throws std::invalid_argument if the mask is empty or sizes mismatch.
MaskedStats masked_stats(const ArrayXd& values, const Mask& mask);

}  // namespace searchplan
