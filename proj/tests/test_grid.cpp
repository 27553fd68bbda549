#include <cmath>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "searchplan/errors.hpp"
#include "searchplan/field.hpp"
#include "searchplan/field_io.hpp"
#include "searchplan/prior.hpp"

using namespace searchplan;

TEST_CASE("domain validates its invariants") {
  CHECK_THROWS_AS(Domain(0, 1, 0, 1, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(Domain(0, 1, 0, 1, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(Domain(1, 1, 0, 1, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(Domain(0, 1, 2, 1, 4, 4), std::invalid_argument);

  const Domain d(0, 2, 0, 2, 2, 2);
  CHECK(d.cell_area() == doctest::Approx(1.0));
  CHECK(d.cell_count() == 4);
}

TEST_CASE("cell centers are row-major midpoints") {
  const auto centers = cell_centers(Domain(0, 2, 0, 2, 2, 2));
  REQUIRE(centers.size() == 4);
  CHECK(centers[0].x == doctest::Approx(0.5));
  CHECK(centers[0].y == doctest::Approx(0.5));
  CHECK(centers[1].x == doctest::Approx(1.5));
  CHECK(centers[1].y == doctest::Approx(0.5));
  CHECK(centers[2].x == doctest::Approx(0.5));
  CHECK(centers[2].y == doctest::Approx(1.5));
  CHECK(centers[3].x == doctest::Approx(1.5));
  CHECK(centers[3].y == doctest::Approx(1.5));

  const auto wide = cell_centers(Domain(-6, 6, -6, 6, 3, 3));
  for (int k = 0; k < 3; ++k) {
    CHECK(wide[static_cast<std::size_t>(k)].x == doctest::Approx(-4.0 + 4.0 * k));
  }
  CHECK(wide[4].x == doctest::Approx(0.0));
  CHECK(wide[4].y == doctest::Approx(0.0));
}

TEST_CASE("field construction validates size and finiteness") {
  const Domain d(0, 1, 0, 1, 2, 2);
  CHECK_THROWS_AS(ScalarField(d, ArrayXd::Zero(3)), std::invalid_argument);
  ArrayXd nan_values = ArrayXd::Zero(4);
  nan_values[2] = std::nan("");
  CHECK_THROWS_AS(ScalarField(d, nan_values), std::invalid_argument);
}

TEST_CASE("integrate: constants, zero, linearity, positivity") {
  const Domain unit(0, 1, 0, 1, 10, 10);
  CHECK(integrate(ScalarField::constant(unit, 1.0)) == doctest::Approx(1.0));
  CHECK(integrate(ScalarField::zero(unit)) == 0.0);

  // integrate(a f + b g) = a integrate(f) + b integrate(g)
  ArrayXd f(100), g(100);
  for (int k = 0; k < 100; ++k) {
    f[k] = std::sin(0.1 * k) + 1.5;
    g[k] = std::cos(0.2 * k) + 2.0;
  }
  const double lhs = integrate(ScalarField(unit, 2.0 * f + 3.0 * g));
  const double rhs = 2.0 * integrate(ScalarField(unit, f)) +
                     3.0 * integrate(ScalarField(unit, g));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  CHECK(integrate(ScalarField(unit, f)) > 0.0);
}

TEST_CASE("integrate captures the quadrant-exponential mass") {
  const TargetPrior prior{CornerExponential{}};
  const Domain box(0, 15, 0, 15, 512, 512);
  const ScalarField field = discretize(prior, box);
  CHECK(integrate(field) == doctest::Approx(1.0).epsilon(5e-3));
  // largest sample sits at the first cell center
  CHECK(sup_norm(field) ==
        doctest::Approx(std::exp(-2.0 * (15.0 / 1024.0))).epsilon(1e-12));
}

TEST_CASE("integrate refines at second order") {
  const TargetPrior prior{CornerExponential{}};
  const double exact = (1.0 - std::exp(-15.0)) * (1.0 - std::exp(-15.0));
  const double err_h = std::abs(
      integrate(discretize(prior, Domain(0, 15, 0, 15, 128, 128))) - exact);
  const double err_h2 = std::abs(
      integrate(discretize(prior, Domain(0, 15, 0, 15, 256, 256))) - exact);
  CHECK(err_h2 < err_h);
  CHECK(err_h2 == doctest::Approx(err_h / 4.0).epsilon(0.1));
}

TEST_CASE("sup_norm") {
  const Domain d(0, 1, 0, 1, 2, 2);
  CHECK(sup_norm(ScalarField::constant(d, 0.3)) == doctest::Approx(0.3));
  CHECK(sup_norm(ScalarField::zero(d)) == 0.0);
  ArrayXd v(4);
  v << 1.0, -2.5, 0.0, 2.0;
  CHECK(sup_norm(ScalarField(d, v)) == doctest::Approx(2.5));
}

TEST_CASE("bilinear interpolation reproduces affine fields") {
  const Domain d(0, 4, 0, 2, 16, 8);
  ArrayXd values(d.cell_count());
  for (std::size_t k = 0; k < d.cell_count(); ++k) {
    const Point c = d.center(k);
    values[static_cast<Eigen::Index>(k)] = 2.0 * c.x + 3.0 * c.y - 1.0;
  }
  const ScalarField field(d, values);
  // exact away from the boundary band
  CHECK(interpolate(field, {1.7, 0.9}) ==
        doctest::Approx(2.0 * 1.7 + 3.0 * 0.9 - 1.0).epsilon(1e-12));
  CHECK(interpolate(field, {3.1, 1.23}) ==
        doctest::Approx(2.0 * 3.1 + 3.0 * 1.23 - 1.0).epsilon(1e-12));
  // the outer half-cell band clamps to the edge-center value along that axis
  CHECK(interpolate(field, {0.0, 0.9}) ==
        doctest::Approx(2.0 * 0.125 + 3.0 * 0.9 - 1.0).epsilon(1e-12));
  // corners clamp both axes
  CHECK(interpolate(field, {4.0, 2.0}) ==
        doctest::Approx(2.0 * 3.875 + 3.0 * 1.875 - 1.0).epsilon(1e-12));
  CHECK_THROWS_AS(interpolate(field, {4.01, 1.0}), std::domain_error);
  CHECK_THROWS_AS(interpolate(field, {1.0, -0.1}), std::domain_error);
}

TEST_CASE("masked statistics") {
  ArrayXd values(5);
  values << 1.0, 2.0, 3.0, 4.0, 100.0;
  Mask mask(5);
  mask << true, true, true, true, false;
  const MaskedStats stats = masked_stats(values, mask);
  CHECK(stats.count == 4);
  CHECK(stats.mean == doctest::Approx(2.5));
  CHECK(stats.max_abs_dev == doctest::Approx(1.5));
  CHECK(stats.rel_std == doctest::Approx(std::sqrt(1.25) / 2.5));

  const Mask none = Mask::Constant(5, false);
  CHECK_THROWS_AS(masked_stats(values, none), std::invalid_argument);

  const MaskedStats flat = masked_stats(ArrayXd::Constant(5, 0.7),
                                        Mask::Constant(5, true));
  CHECK(flat.max_abs_dev == 0.0);
  CHECK(flat.rel_std == 0.0);
}

TEST_CASE("CSV round trip preserves every bit") {
  const Domain d(-1.5, 2.5, 0.25, 1.75, 4, 3);
  ArrayXd values(d.cell_count());
  for (std::size_t k = 0; k < d.cell_count(); ++k) {
    values[static_cast<Eigen::Index>(k)] =
        std::sin(static_cast<double>(k) * 12.9898) * 43758.5453;
  }
  const ScalarField field(d, values);

  std::stringstream csv;
  save_csv(field, csv);
  const ScalarField loaded = load_csv(csv, "roundtrip");
  CHECK(loaded.domain().nx() == d.nx());
  CHECK(loaded.domain().ny() == d.ny());
  CHECK(loaded.domain().x_min() == doctest::Approx(d.x_min()).epsilon(1e-14));
  for (std::size_t k = 0; k < d.cell_count(); ++k) {
    CHECK(loaded[k] == field[k]);  // bit-exact through 17 digits
  }

  // and the serialization itself is deterministic
  std::stringstream again;
  save_csv(field, again);
  CHECK(csv.str() == again.str());
}

TEST_CASE("CSV loader addresses malformed input by line") {
  {
    std::stringstream in("x,y\n");
    CHECK_THROWS_WITH_AS(load_csv(in, "bad"),
                         doctest::Contains("bad:1"), ConfigError);
  }
  {
    std::stringstream in("x,y,value\n0.5,0.5,1\n1.5,oops,1\n");
    CHECK_THROWS_WITH_AS(load_csv(in, "bad"),
                         doctest::Contains("bad:3"), ConfigError);
  }
  {
    // jumbled order is not a row-major grid
    std::stringstream in(
        "x,y,value\n0.5,0.5,1\n1.5,0.5,1\n1.5,1.5,1\n0.5,1.5,1\n");
    CHECK_THROWS_AS(load_csv(in, "bad"), ConfigError);
  }
  {
    std::stringstream in("x,y,value\n0.5,0.5,1\n1.5,0.5,1\n");
    CHECK_THROWS_AS(load_csv(in, "bad"), ConfigError);  // single row of cells
  }
}
