#include "searchplan/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace searchplan {

Domain::Domain(double x_min, double x_max, double y_min, double y_max, int nx,
               int ny)
    : x_min_(x_min),
      x_max_(x_max),
      y_min_(y_min),
      y_max_(y_max),
      nx_(nx),
      ny_(ny) {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
        std::isfinite(y_max))) {
    throw std::invalid_argument("domain bounds must be finite");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw std::invalid_argument("domain must have positive extent");
  }
  if (nx < 2 || ny < 2) {
    throw std::invalid_argument("grid must be at least 2x2, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  }
  dx_ = (x_max_ - x_min_) / nx_;
  dy_ = (y_max_ - y_min_) / ny_;
}

std::vector<Point> cell_centers(const Domain& domain) {
  std::vector<Point> centers;
  centers.reserve(domain.cell_count());
  for (int j = 0; j < domain.ny(); ++j) {
    for (int i = 0; i < domain.nx(); ++i) {
      centers.push_back(domain.center(domain.index(i, j)));
    }
  }
  return centers;
}

}  // namespace searchplan
