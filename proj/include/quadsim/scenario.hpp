#pragma once

namespace quadsim {

// Reference trajectory sample: commanded positions and yaw together with
// their first two time derivatives, all analytic (references are never
// numerically differentiated).
struct Reference {
  double x_r = 0.0, dx_r = 0.0, ddx_r = 0.0;
  double y_r = 0.0, dy_r = 0.0, ddy_r = 0.0;
  double z_r = 0.0, dz_r = 0.0, ddz_r = 0.0;
  double psi_r = 0.0, dpsi_r = 0.0, ddpsi_r = 0.0;
};

// The three built-in flight profiles:
//   1 - constant setpoint regulation, 15 s: (12, 12, 12) m, yaw 0.5 rad.
//   2 - smooth tracking, 60 s: unit-circle sweep at period 10 s while
//       climbing at 0.5 m/s, yaw 0.5 rad.
//   3 - piecewise-constant setpoint schedule, 60 s, six 10 s segments with
//       right-continuous switches and zero derivatives.
struct ScenarioSpec {
  int id = 1;
  double duration = 15.0;  // [s]

  // Throws OutOfRange for ids outside {1, 2, 3}.
  static ScenarioSpec by_id(int id);
};

// Sample the reference at time t. Throws OutOfRange when t is negative or
// beyond the scenario duration (small roundoff slack allowed).
Reference reference_at(double t, const ScenarioSpec& s);

}  // namespace quadsim
