#pragma once

#include <cstddef>
#include <vector>

namespace searchplan {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned rectangular domain split into nx-by-ny equal cells.
///
/// All gridded quantities are sampled at cell centers and stored row-major
/// with x varying fastest: cell (i, j) has flat index j*nx + i.
class Domain {
 public:
  Domain(double x_min, double x_max, double y_min, double y_max, int nx,
         int ny);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double cell_area() const { return dx_ * dy_; }
  double area() const { return (x_max_ - x_min_) * (y_max_ - y_min_); }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i);
  }

  Point center(std::size_t k) const {
    const int i = static_cast<int>(k % static_cast<std::size_t>(nx_));
    const int j = static_cast<int>(k / static_cast<std::size_t>(nx_));
    return {x_min_ + (i + 0.5) * dx_, y_min_ + (j + 0.5) * dy_};
  }

  bool contains(Point p) const {
    return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
  }

  bool operator==(const Domain&) const = default;

 private:
  double x_min_, x_max_, y_min_, y_max_;
  int nx_, ny_;
  double dx_, dy_;
};

/// All cell centers of a domain in deterministic row-major order.
std::vector<Point> cell_centers(const Domain& domain);

}  // namespace searchplan
