#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "searchplan/detection.hpp"
#include "searchplan/errors.hpp"
#include "searchplan/field.hpp"

using namespace searchplan;

TEST_CASE("exponential detection closed forms") {
  const DetectionModel model{ExponentialDetection{2.0}};
  const Point p{0.3, -0.7};  // irrelevant for the homogeneous model

  CHECK(prob(model, p, 0.0) == 0.0);
  CHECK(prob(model, p, 1.0) == doctest::Approx(1.0 - std::exp(-2.0)));
  CHECK(survival(model, p, 1.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(prob(model, p, 1.0) + survival(model, p, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(deriv(model, p, 0.0) == doctest::Approx(2.0));
  CHECK(deriv(model, p, 1.5) == doctest::Approx(2.0 * std::exp(-3.0)));

  // tiny efforts keep full precision (no 1 - (1 - eps) cancellation)
  CHECK(prob(model, p, 1e-18) == doctest::Approx(2e-18).epsilon(1e-12));

  CHECK(exponential_rate(model, p).has_value());
  CHECK(*exponential_rate(model, p) == 2.0);

  CHECK_THROWS_AS(prob(model, p, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(DetectionModel{ExponentialDetection{0.0}},
                  std::invalid_argument);
  CHECK_THROWS_AS(DetectionModel{ExponentialDetection{-1.0}},
                  std::invalid_argument);
}

TEST_CASE("deriv_inverse inverts the exponential derivative") {
  const DetectionModel model{ExponentialDetection{2.0}};
  const Point p{0.0, 0.0};

  // deriv(y) = 2 e^{-2y}: inverse of its own value is the point itself
  for (const double y : {0.0, 0.1, 1.0, 7.5}) {
    CHECK(deriv_inverse(model, p, 2.0 * std::exp(-2.0 * y)) ==
          doctest::Approx(y).epsilon(1e-14));
  }
  // targets at or above deriv(0) need no effort
  CHECK(deriv_inverse(model, p, 2.0) == 0.0);
  CHECK(deriv_inverse(model, p, 5.0) == 0.0);
  CHECK_THROWS_AS(deriv_inverse(model, p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(deriv_inverse(model, p, -1.0), std::invalid_argument);
}

TEST_CASE("spatial exponential detection with the norm-squared default") {
  const DetectionModel model{SpatialExponentialDetection{}};

  CHECK(*exponential_rate(model, {1.0, 2.0}) == doctest::Approx(5.0));
  CHECK(*exponential_rate(model, {0.0, 0.0}) == 0.0);

  CHECK(prob(model, {1.0, 1.0}, 0.5) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(deriv(model, {1.0, 1.0}, 0.5) == doctest::Approx(2.0 * std::exp(-1.0)));

  // rate 0 cells never detect and absorb no effort
  CHECK(prob(model, {0.0, 0.0}, 100.0) == 0.0);
  CHECK(deriv_inverse(model, {0.0, 0.0}, 0.5) == 0.0);
}

TEST_CASE("spatial exponential detection with a rate field") {
  const Domain d(0, 2, 0, 2, 4, 4);
  ArrayXd rates(d.cell_count());
  for (std::size_t k = 0; k < d.cell_count(); ++k) {
    const Point c = d.center(k);
    rates[static_cast<Eigen::Index>(k)] = 1.0 + c.x;  // affine: interpolates exactly
  }
  const DetectionModel model{SpatialExponentialDetection{ScalarField(d, rates)}};

  CHECK(*exponential_rate(model, {1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(prob(model, {1.0, 1.0}, 0.5) == doctest::Approx(1.0 - std::exp(-1.0)));

  ArrayXd negative = rates;
  negative[0] = -0.5;
  CHECK_THROWS_AS(
      DetectionModel{SpatialExponentialDetection{ScalarField(d, negative)}},
      std::invalid_argument);
}

TEST_CASE("generic detection model round-trips through bisection") {
  // d(y) = (sqrt(pi)/2) erf(y): regular, with derivative e^{-y^2}. Not an
  // exponential family, so deriv_inverse has no closed form here.
  const GenericRegularDetection spec{
      [](Point, double y) { return 0.5 * std::sqrt(M_PI) * std::erf(y); },
      [](Point, double y) { return std::exp(-y * y); }};
  const DetectionModel model{spec};
  const Point p{0.0, 0.0};

  CHECK_FALSE(exponential_rate(model, p).has_value());
  CHECK(prob(model, p, 0.0) == 0.0);

  for (const double y : {0.05, 0.5, 2.0, 5.0}) {
    const double target = std::exp(-y * y);
    CHECK(deriv_inverse(model, p, target) == doctest::Approx(y).epsilon(1e-10));
  }
  CHECK(deriv_inverse(model, p, 1.0) == 0.0);   // = deriv(0)
  CHECK(deriv_inverse(model, p, 2.0) == 0.0);   // above deriv(0)
}

TEST_CASE("regularity check accepts the built-ins and rejects frauds") {
  const std::vector<Point> pts = {{0.0, 0.0}, {0.5, 1.0}, {2.0, 2.0}};
  const std::span<const Point> span(pts);

  CHECK_NOTHROW(check_regularity(DetectionModel{ExponentialDetection{1.0}}, span));
  CHECK_NOTHROW(check_regularity(DetectionModel{SpatialExponentialDetection{}}, span));

  // d(0) != 0
  CHECK_THROWS_AS(
      check_regularity(DetectionModel{GenericRegularDetection{
                           [](Point, double y) { return 0.1 + 0.5 * y; },
                           [](Point, double) { return 0.5; }}},
                       span),
      RegularityError);

  // derivative not strictly decreasing (linear d)
  CHECK_THROWS_AS(
      check_regularity(DetectionModel{GenericRegularDetection{
                           [](Point, double y) { return std::min(y, 1.0); },
                           [](Point, double) { return 1.0; }}},
                       span),
      RegularityError);

  // claimed derivative disagrees with finite differences of d
  CHECK_THROWS_AS(
      check_regularity(DetectionModel{GenericRegularDetection{
                           [](Point, double y) { return 1.0 - std::exp(-y); },
                           [](Point, double y) { return 2.0 * std::exp(-2.0 * y); }}},
                       span),
      RegularityError);

  // d escaping [0, 1]
  CHECK_THROWS_AS(
      check_regularity(DetectionModel{GenericRegularDetection{
                           [](Point, double y) { return 2.0 * (1.0 - std::exp(-y)); },
                           [](Point, double y) { return 2.0 * std::exp(-y); }}},
                       span),
      RegularityError);
}
