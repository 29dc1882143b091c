#include "wick/closed_form.hpp"
#include "wick/errors.hpp"
#include "wick/observables.hpp"

#include <doctest.h>

#include <cmath>

using namespace wick;

TEST_CASE("moments of closed-form densities") {
  const Grid1D grid(-15.0, 20.0, 3501);
  const MomentReport d = moments(RealField::sample(grid, [](double x) { return drift_brown_pdf(1.0, 2.0, x, 1.5); }));
  CHECK(std::abs(d.mean - 3.0) < 1e-8);
  CHECK(std::abs(d.variance - 3.0) < 1e-8);
  CHECK(std::abs(d.mass - 1.0) < 1e-8);
  const MomentReport o =
      moments(RealField::sample(grid, [](double x) { return ou_kernel(1.0, 0.5, x, 2.0, 2.0); }));
  CHECK(std::abs(o.mean - 0.7357588823428846) < 1e-8);
  CHECK(std::abs(o.variance - 2.0 * (1.0 - std::exp(-2.0))) < 1e-8);
  const MomentReport s = moments(gaussian_field(Grid1D(-5.0, 5.0, 101), 0.0, 1.0));
  CHECK(std::abs(s.mean) < 1e-15);
  CHECK_THROWS_AS(moments(RealField::zero(grid)), DegenerateFieldError);
}

TEST_CASE("velocity by mean drift") {
  const Grid1D grid(-20.0, 20.0, 4001);
  auto brown = [&](double t) { return RealField::sample(grid, [&](double x) { return brown_kernel(1.0, x, 0.5, t); }); };
  CHECK(std::abs(velocity_via_mean_drift(brown(0.99), brown(1.01), 0.01)) < 1e-10);
  auto ou = [&](double t) { return RealField::sample(grid, [&](double x) { return ou_kernel(1.0, 0.5, x, 2.0, t); }); };
  const double delta = 1e-3;
  CHECK(velocity_via_mean_drift(ou(1.0 - delta), ou(1.0 + delta), delta) ==
        doctest::Approx(-0.5 * ou_mean(2.0, 0.5, 1.0)).epsilon(1e-6));
  CHECK_THROWS_AS(velocity_via_mean_drift(ou(1.0), ou(1.0), 0.0), std::invalid_argument);
}

TEST_CASE("literal velocity integrand vanishes") {
  const Grid1D grid(-15.0, 20.0, 3501);
  const RealField drifted = RealField::sample(grid, [](double x) { return drift_brown_pdf(1.0, 2.0, x, 1.0); });
  CHECK(std::abs(velocity_operator_literal(drifted, 0.5)) <= grid.dx() * grid.dx());
  const Grid1D small(-2.0, 2.0, 401);
  const RealField bump = RealField::sample(small, [](double x) { return std::abs(x) < 1.0 ? 1.0 - x * x : 0.0; });
  CHECK(std::abs(velocity_operator_literal(bump, 1.0)) < 1e-14);
}

TEST_CASE("closed-form partition function") {
  CHECK(std::abs(partition_function(1.0, 1.0, 2.0, Grid1D(-10.0, 10.0, 2001)) - 0.42545906411966077) < 1e-6);
  const double z30 = partition_function(1.0, 1.0, 30.0, Grid1D(-10.0, 10.0, 2001));
  CHECK(std::abs(z30 - std::exp(-15.0)) / std::exp(-15.0) < 1e-6);
  const double zs = partition_function(1.0, 1.0, 0.01, Grid1D(-120.0, 120.0, 4801));
  CHECK(std::abs(zs - 100.0) / 100.0 < 1e-3);
  CHECK_THROWS_AS(partition_function(1.0, 1.0, 0.0, Grid1D(-1.0, 1.0, 3)), std::invalid_argument);
}

TEST_CASE("lattice partition function refinement") {
  const auto rows = partition_refinement(1.0, 1.0, 2.0, Grid1D(-8.0, 8.0, 401), {20, 40, 80});
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].error < rows[1].error);
  CHECK(rows[1].error < rows[0].error);
  CHECK(rows[2].order >= 0.85);
  const Json j = to_json(rows);
  CHECK(j.size() == 3);
  CHECK(j[0]["steps"] == 20);
}
