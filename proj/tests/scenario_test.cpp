#include <cmath>
#include <numbers>

#include "doctest.h"
#include "quadsim/errors.hpp"
#include "quadsim/scenario.hpp"

using namespace quadsim;

TEST_SUITE("scenario") {

TEST_CASE("ids and durations") {
  CHECK(ScenarioSpec::by_id(1).duration == 15.0);
  CHECK(ScenarioSpec::by_id(2).duration == 60.0);
  CHECK(ScenarioSpec::by_id(3).duration == 60.0);
  CHECK(ScenarioSpec::by_id(2).id == 2);
  CHECK_THROWS_AS(ScenarioSpec::by_id(0), OutOfRange);
  CHECK_THROWS_AS(ScenarioSpec::by_id(4), OutOfRange);
  CHECK_THROWS_AS(ScenarioSpec::by_id(-1), OutOfRange);
}

TEST_CASE("constant setpoint profile") {
  const ScenarioSpec s = ScenarioSpec::by_id(1);
  for (double t : {0.0, 7.3, 15.0}) {
    const Reference r = reference_at(t, s);
    CHECK(r.x_r == 12.0);
    CHECK(r.y_r == 12.0);
    CHECK(r.z_r == 12.0);
    CHECK(r.psi_r == 0.5);
    CHECK(r.dx_r == 0.0);
    CHECK(r.dy_r == 0.0);
    CHECK(r.dz_r == 0.0);
    CHECK(r.dpsi_r == 0.0);
    CHECK(r.ddx_r == 0.0);
    CHECK(r.ddy_r == 0.0);
    CHECK(r.ddz_r == 0.0);
    CHECK(r.ddpsi_r == 0.0);
  }
}

TEST_CASE("tracking profile carries analytic derivatives") {
  const ScenarioSpec s = ScenarioSpec::by_id(2);
  const double w = std::numbers::pi / 5.0;

  // quarter period: the sine peaks and the cosine crosses zero
  Reference r = reference_at(2.5, s);
  CHECK(std::abs(r.x_r - 1.0) < 1e-12);
  CHECK(std::abs(r.dx_r) < 1e-15);
  CHECK(std::abs(r.ddx_r - (-0.3947841760435743)) < 1e-12);
  CHECK(std::abs(r.y_r - (-1.0)) < 1e-12);
  CHECK(std::abs(r.dy_r - (-w)) < 1e-12);
  CHECK(std::abs(r.ddy_r) < 1e-15);
  CHECK(r.z_r == 1.25);
  CHECK(r.dz_r == 0.5);
  CHECK(r.ddz_r == 0.0);
  CHECK(r.psi_r == 0.5);

  // start: on the unit circle's origin point, climbing
  r = reference_at(0.0, s);
  CHECK(r.x_r == 0.0);
  CHECK(std::abs(r.dx_r - w) < 1e-15);
  CHECK(r.y_r == 0.0);
  CHECK(std::abs(r.ddy_r - (-w * w)) < 1e-15);
  CHECK(r.z_r == 0.0);

  // the stated derivatives match finite differences of the positions
  const double t0 = 1.7;
  const double h = 1e-5;
  const Reference lo = reference_at(t0 - h, s);
  const Reference hi = reference_at(t0 + h, s);
  const Reference mid = reference_at(t0, s);
  CHECK(std::abs((hi.x_r - lo.x_r) / (2.0 * h) - mid.dx_r) < 1e-8);
  CHECK(std::abs((hi.y_r - lo.y_r) / (2.0 * h) - mid.dy_r) < 1e-8);
  CHECK(std::abs((hi.z_r - lo.z_r) / (2.0 * h) - mid.dz_r) < 1e-8);
  CHECK(std::abs((hi.dx_r - lo.dx_r) / (2.0 * h) - mid.ddx_r) < 1e-8);
  CHECK(std::abs((hi.dy_r - lo.dy_r) / (2.0 * h) - mid.ddy_r) < 1e-8);
}

TEST_CASE("segment schedule switches right-continuously") {
  const ScenarioSpec s = ScenarioSpec::by_id(3);
  const auto expect = [&](double t, double x, double y, double z,
                          double psi) {
    const Reference r = reference_at(t, s);
    CHECK(r.x_r == x);
    CHECK(r.y_r == y);
    CHECK(r.z_r == z);
    CHECK(r.psi_r == psi);
    CHECK(r.dx_r == 0.0);
    CHECK(r.dy_r == 0.0);
    CHECK(r.dz_r == 0.0);
    CHECK(r.ddz_r == 0.0);
    CHECK(r.dpsi_r == 0.0);
  };
  expect(0.0, 3.0, 3.0, 3.0, 0.2);
  expect(5.0, 3.0, 3.0, 3.0, 0.2);
  expect(10.0, 1.5, 3.0, 3.0, 0.2);  // switch takes effect exactly at t=10
  expect(15.0, 1.5, 3.0, 3.0, 0.2);
  expect(20.0, 1.5, 1.5, 3.0, 0.2);
  expect(25.0, 1.5, 1.5, 3.0, 0.2);
  expect(30.0, 3.0, 1.5, 3.0, 0.4);
  expect(35.0, 3.0, 1.5, 3.0, 0.4);
  expect(40.0, 3.0, 3.0, 3.0, 0.4);
  expect(45.0, 3.0, 3.0, 3.0, 0.4);
  expect(50.0, 3.0, 3.0, 0.0, 0.4);
  expect(55.0, 3.0, 3.0, 0.0, 0.4);
  expect(60.0, 3.0, 3.0, 0.0, 0.4);
}

TEST_CASE("out-of-range times are rejected with roundoff slack") {
  const ScenarioSpec s1 = ScenarioSpec::by_id(1);
  CHECK_THROWS_AS(reference_at(-0.01, s1), OutOfRange);
  CHECK_THROWS_AS(reference_at(15.1, s1), OutOfRange);
  CHECK_NOTHROW(reference_at(15.0 + 1e-12, s1));
  CHECK_NOTHROW(reference_at(-1e-12, s1));
  const ScenarioSpec s2 = ScenarioSpec::by_id(2);
  CHECK_THROWS_AS(reference_at(60.1, s2), OutOfRange);
  CHECK_NOTHROW(reference_at(60.0, s2));
}

}  // TEST_SUITE
