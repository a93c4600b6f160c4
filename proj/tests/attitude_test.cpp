#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "quadsim/attitude.hpp"
#include "quadsim/errors.hpp"
#include "test_util.hpp"

using namespace quadsim;

namespace {

// Gyroscopic drift terms of the rotational channels, as the torque law
// models them on the estimate.
void gyro_terms(const QuadState& est, const QuadParams& p, double* f_phi,
                double* f_theta, double* f_psi) {
  *f_phi = est.q_rate * est.r_rate * (p.Iyy - p.Izz) / p.Ixx;
  *f_theta = est.p_rate * est.r_rate * (p.Izz - p.Ixx) / p.Iyy;
  *f_psi = est.p_rate * est.q_rate * (p.Ixx - p.Iyy) / p.Izz;
}

AttitudeCommand random_command(std::mt19937_64& g) {
  AttitudeCommand cmd;
  cmd.phi = {testutil::uniform_in(g, -0.5, 0.5),
             testutil::uniform_in(g, -0.5, 0.5),
             testutil::uniform_in(g, -0.5, 0.5)};
  cmd.theta = {testutil::uniform_in(g, -0.5, 0.5),
               testutil::uniform_in(g, -0.5, 0.5),
               testutil::uniform_in(g, -0.5, 0.5)};
  cmd.psi = {testutil::uniform_in(g, -0.5, 0.5),
             testutil::uniform_in(g, -0.5, 0.5),
             testutil::uniform_in(g, -0.5, 0.5)};
  return cmd;
}

}  // namespace

TEST_SUITE("attitude") {

TEST_CASE("sat clips outside the unit interval") {
  CHECK(sat(-2.0) == -1.0);
  CHECK(sat(-1.0) == -1.0);
  CHECK(sat(-0.5) == -0.5);
  CHECK(sat(0.0) == 0.0);
  CHECK(sat(0.5) == 0.5);
  CHECK(sat(1.0) == 1.0);
  CHECK(sat(2.0) == 1.0);
}

TEST_CASE("tilt references follow the thrust-projection signs") {
  const AttitudeGains g;
  QuadState est;
  Reference ref;

  // +y error demands negative roll (thrust pushes along -y for +phi)
  ref.y_r = 1.0;
  TiltReference tr = reference_angles(est, ref, g);
  CHECK(std::abs(tr.phi_r - (-g.kpy)) < 1e-15);
  CHECK(tr.theta_r == 0.0);

  // vehicle ahead of the x reference demands negative pitch
  ref = Reference{};
  est.x = 1.0;
  tr = reference_angles(est, ref, g);
  CHECK(std::abs(tr.theta_r - (-g.kpx)) < 1e-15);
  CHECK(tr.phi_r == 0.0);

  // estimated +vy is damped with positive roll
  est = QuadState{};
  est.vy = 1.0;
  tr = reference_angles(est, ref, g);
  CHECK(std::abs(tr.phi_r - g.kdy) < 1e-15);

  // estimated +vx is damped with negative pitch
  est = QuadState{};
  est.vx = 1.0;
  tr = reference_angles(est, ref, g);
  CHECK(std::abs(tr.theta_r - (-g.kdx)) < 1e-15);

  // large errors clamp to +/- pi/4
  est = QuadState{};
  est.y = 100.0;
  tr = reference_angles(est, ref, g);
  CHECK(tr.phi_r == std::numbers::pi / 4.0);
  est = QuadState{};
  est.x = 100.0;
  tr = reference_angles(est, ref, g);
  CHECK(tr.theta_r == -std::numbers::pi / 4.0);
}

TEST_CASE("derivative estimator warms up then differentiates") {
  BackwardDiff bd;
  const double ts = 0.01;

  // ramp 3t: first two samples report zero, then d = 3 and dd = 0
  BackwardDiff::Derivs d = bd.push(0.0, ts);
  CHECK(d.d == 0.0);
  CHECK(d.dd == 0.0);
  d = bd.push(0.03, ts);
  CHECK(d.d == 0.0);
  CHECK(d.dd == 0.0);
  d = bd.push(0.06, ts);
  CHECK(std::abs(d.d - 3.0) < 1e-12);
  CHECK(std::abs(d.dd) < 1e-9);
  d = bd.push(0.09, ts);
  CHECK(std::abs(d.d - 3.0) < 1e-12);

  // quadratic t^2 sampled at 0, 0.01, 0.02: dd = 2 once warmed up
  bd.reset();
  bd.push(0.0, ts);
  bd.push(1e-4, ts);
  d = bd.push(4e-4, ts);
  CHECK(std::abs(d.d - 0.03) < 1e-12);
  CHECK(std::abs(d.dd - 2.0) < 1e-9);

  // reset forgets the history
  bd.reset();
  d = bd.push(5.0, ts);
  CHECK(d.d == 0.0);
  CHECK(d.dd == 0.0);

  CHECK_THROWS_AS(bd.push(1.0, 0.0), OutOfRange);
  CHECK_THROWS_AS(bd.push(1.0, -0.01), OutOfRange);
}

TEST_CASE("torque law worked value") {
  const QuadParams p;
  const AttitudeGains g;
  const QuadState est;  // at rest
  AttitudeCommand cmd;
  cmd.phi.r = 0.1;

  // s = c*(0 - 0.1) = -0.35, inside the boundary layer, so
  // C1 = Ixx*(c*0.1 + K*0.35) = 0.00149*0.49
  const BodyTorques tq = attitude_torques(est, cmd, p, g);
  CHECK(std::abs(tq.C1 - 7.301e-4) < 1e-15);
  CHECK(tq.C2 == 0.0);
  CHECK(tq.C3 == 0.0);
}

TEST_CASE("reaching identity holds in the controller model") {
  const QuadParams p;
  const AttitudeGains g;
  std::mt19937_64 eng(404);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const QuadState est = testutil::random_state(eng);
    const AttitudeCommand cmd = random_command(eng);
    const BodyTorques tq = attitude_torques(est, cmd, p, g);

    double f_phi, f_theta, f_psi;
    gyro_terms(est, p, &f_phi, &f_theta, &f_psi);
    const double acc[3] = {f_phi + tq.C1 / p.Ixx, f_theta + tq.C2 / p.Iyy,
                           f_psi + tq.C3 / p.Izz};
    const double ang[3] = {est.phi, est.theta, est.psi};
    const double rate[3] = {est.p_rate, est.q_rate, est.r_rate};
    const AngleCommand* ac[3] = {&cmd.phi, &cmd.theta, &cmd.psi};
    const double c[3] = {g.c_phi, g.c_theta, g.c_psi};
    const double K[3] = {g.K_phi, g.K_theta, g.K_psi};
    for (int a = 0; a < 3; ++a) {
      const double s = c[a] * (ang[a] - ac[a]->r) + (rate[a] - ac[a]->dr);
      const double ds = c[a] * (rate[a] - ac[a]->dr) + (acc[a] - ac[a]->ddr);
      worst = std::max(worst, std::abs(ds - (-s - K[a] * sat(s))));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("gains validate") {
  AttitudeGains g;
  CHECK_NOTHROW(g.validate());
  g.kpx = 0.0;
  CHECK_THROWS_AS(g.validate(), InvalidGains);
  g = AttitudeGains{};
  g.K_psi = -0.1;
  CHECK_THROWS_AS(g.validate(), InvalidGains);
  g = AttitudeGains{};
  g.c_theta = 0.0;
  CHECK_THROWS_AS(attitude_torques(QuadState{}, AttitudeCommand{}, QuadParams{}, g),
                  InvalidGains);
}

}  // TEST_SUITE
