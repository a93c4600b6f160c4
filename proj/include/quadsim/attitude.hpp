#pragma once

#include "quadsim/scenario.hpp"
#include "quadsim/types.hpp"

namespace quadsim {

// Saturation used in place of the discontinuous sign function to keep the
// switching action chatter-free: identity on (-1, 1), clipped to +/-1
// outside.
double sat(double v);

// Gains of the attitude layer: the PD maps that turn lateral position error
// into tilt references, the sliding-surface slopes, and the switching gains.
struct AttitudeGains {
  double kpx = 0.1, kdx = 0.15;  // pitch reference PD [rad/m], [rad s/m]
  double kpy = 0.1, kdy = 0.15;  // roll reference PD
  double c_phi = 3.5, c_theta = 3.5, c_psi = 0.5;  // surface slopes [1/s]
  double K_phi = 0.4, K_theta = 0.4, K_psi = 0.2;  // switching gains [1/s]

  // Throws InvalidGains unless every gain is strictly positive.
  void validate() const;
};

// Roll/pitch references produced from lateral tracking error, clamped to
// +/- pi/4 so the vehicle never leaves the small-tilt regime.
struct TiltReference {
  double phi_r = 0.0;
  double theta_r = 0.0;
};

// PD generation of the tilt references. Positive pitch accelerates the
// vehicle along +x and positive roll along -y (thrust-projection signs of
// the plant), so the proportional terms act on (x_r - x) and (y - y_r)
// respectively; the derivative terms damp the estimated velocity error.
TiltReference reference_angles(const QuadState& est, const Reference& ref,
                               const AttitudeGains& g);

// Backward-difference estimator for the first two derivatives of a sampled
// scalar signal (used for the tilt references, whose derivatives have no
// analytic form). Returns zeros for the first two samples; afterwards
//   d  = (v_k - v_{k-1}) / ts
//   dd = (v_k - 2 v_{k-1} + v_{k-2}) / ts^2.
class BackwardDiff {
 public:
  struct Derivs {
    double d = 0.0;
    double dd = 0.0;
  };

  // ts must be strictly positive (throws OutOfRange otherwise).
  Derivs push(double value, double ts);
  void reset();

 private:
  int n_ = 0;
  double prev1_ = 0.0;
  double prev2_ = 0.0;
};

// One axis of the attitude command: reference angle plus two derivatives.
struct AngleCommand {
  double r = 0.0;
  double dr = 0.0;
  double ddr = 0.0;
};

// Full attitude command for the torque law.
struct AttitudeCommand {
  AngleCommand phi, theta, psi;
};

struct BodyTorques {
  double C1 = 0.0, C2 = 0.0, C3 = 0.0;  // roll, pitch, yaw [N m]
};

// PD-sliding-mode attitude law. Per axis, with surface
// s = c*(angle - r) + (rate - dr), the torque
//   C = I * ( -c*angle - (c+1)*rate + c*r + (c+1)*dr - f - K*sat(s) + ddr )
// (f the gyroscopic drift term of that axis) enforces the reaching law
// ds/dt = -s - K*sat(s). Throws InvalidGains on non-positive gains.
BodyTorques attitude_torques(const QuadState& est, const AttitudeCommand& cmd,
                             const QuadParams& p, const AttitudeGains& g);

}  // namespace quadsim
