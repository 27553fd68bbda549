#include "searchplan/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace searchplan {

ScalarField::ScalarField(Domain domain, ArrayXd values)
    : domain_(domain), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != domain_.cell_count()) {
    throw std::invalid_argument(
        "field size " + std::to_string(values_.size()) +
        " does not match grid cell count " +
        std::to_string(domain_.cell_count()));
  }
  if (!values_.isFinite().all()) {
    throw std::invalid_argument("field contains non-finite values");
  }
}

ScalarField ScalarField::constant(const Domain& domain, double value) {
  return ScalarField(
      domain,
      ArrayXd::Constant(static_cast<Eigen::Index>(domain.cell_count()), value));
}

double pairwise_sum(const double* data, std::ptrdiff_t n) {
  if (n <= 0) return 0.0;
  if (n <= 64) {
    double acc = 0.0;
    for (std::ptrdiff_t k = 0; k < n; ++k) acc += data[k];
    return acc;
  }
  const std::ptrdiff_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double pairwise_sum(const ArrayXd& values) {
  return pairwise_sum(values.data(), static_cast<std::ptrdiff_t>(values.size()));
}

double integrate(const ScalarField& field) {
  return pairwise_sum(field.values()) * field.domain().cell_area();
}

double sup_norm(const ScalarField& field) {
  if (field.values().size() == 0) return 0.0;
  return field.values().abs().maxCoeff();
}

double interpolate(const ScalarField& field, Point p) {
  const Domain& d = field.domain();
  if (!d.contains(p)) {
    throw std::domain_error("point (" + std::to_string(p.x) + ", " +
                            std::to_string(p.y) + ") is outside the domain");
  }
  // Continuous cell-center coordinates: center (i, j) sits at (i, j) here.
  const double u = (p.x - d.x_min()) / d.dx() - 0.5;
  const double v = (p.y - d.y_min()) / d.dy() - 0.5;
  // Clamp into the center lattice; the outer half-cell band keeps the edge
  // value along the clamped axis.
  const double uc = std::clamp(u, 0.0, static_cast<double>(d.nx() - 1));
  const double vc = std::clamp(v, 0.0, static_cast<double>(d.ny() - 1));
  const int i0 = std::min(static_cast<int>(uc), d.nx() - 2);
  const int j0 = std::min(static_cast<int>(vc), d.ny() - 2);
  const double fx = uc - i0;
  const double fy = vc - j0;
  const double v00 = field[d.index(i0, j0)];
  const double v10 = field[d.index(i0 + 1, j0)];
  const double v01 = field[d.index(i0, j0 + 1)];
  const double v11 = field[d.index(i0 + 1, j0 + 1)];
  return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) +
         fy * ((1.0 - fx) * v01 + fx * v11);
}

MaskedStats masked_stats(const ArrayXd& values, const Mask& mask) {
  if (values.size() != mask.size()) {
    throw std::invalid_argument("mask size does not match value count");
  }
  MaskedStats stats;
  stats.count = static_cast<std::size_t>(mask.count());
  if (stats.count == 0) {
    throw std::invalid_argument("region is empty");
  }
  ArrayXd selected(static_cast<Eigen::Index>(stats.count));
  Eigen::Index out = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (mask[k]) selected[out++] = values[k];
  }
  stats.mean = pairwise_sum(selected) / static_cast<double>(stats.count);
  const ArrayXd dev = selected - stats.mean;
  stats.max_abs_dev = dev.abs().maxCoeff();
  const double variance =
      pairwise_sum(dev.square()) / static_cast<double>(stats.count);
  const double sd = std::sqrt(std::max(0.0, variance));
  stats.rel_std = stats.mean == 0.0 ? (sd == 0.0 ? 0.0 : HUGE_VAL)
                                    : sd / std::abs(stats.mean);
  return stats;
}

}  // namespace searchplan
