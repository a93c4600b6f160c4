#pragma once

#include "quadsim/attitude.hpp"
#include "quadsim/scenario.hpp"
#include "quadsim/types.hpp"

namespace quadsim {

// Classical PD-with-gravity-feedforward baseline. Torque gains act directly
// in N m on the angle errors.
struct PidGains {
  double kpz = 10.0, kdz = 12.0;        // altitude PD [N/m], [N s/m]
  double kp_phi = 0.6, kd_phi = 0.4;    // roll torque PD [N m/rad], [N m s/rad]
  double kp_theta = 0.6, kd_theta = 0.4;
  double kp_psi = 0.4, kd_psi = 0.3;

  void validate() const;  // throws InvalidGains unless all strictly positive
};

// Second-order sliding-mode baseline gains. The per-axis surfaces couple
// position and tilt errors; eps* are the switching amplitudes and eta* the
// proportional reaching gains. hard_sign selects the discontinuous sign
// function (sign(0) = 0) instead of the default boundary-layer sat().
struct SosmcGains {
  double c1 = 0.02, c2 = 0.01, c3 = 0.2, c4 = 0.3;  // roll/y surface weights
  double c5 = 0.05, c6 = 0.01, c7 = 0.2, c8 = 0.3;  // pitch/x surface weights
  double eps1 = 1.7, eps2 = 1.5, eps3 = 1.5, eps4 = 1.2;
  double eta1 = 2.0, eta2 = 5.0, eta3 = 5.0, eta4 = 2.0;
  double c_z = 2.5;    // altitude surface slope
  double c_psi = 0.25; // yaw surface slope
  bool hard_sign = false;

  void validate() const;  // throws InvalidGains unless all strictly positive
};

// PD baseline:
//   Fz = kpz (z_r - z) + kdz (dz_r - vz) + m g
//   C1 = kp_phi (phi_r - phi) + kd_phi (dphi_r - p)
//   C2, C3 analogous for pitch and yaw.
// Tilt references come from the shared PD reference generator (cmd).
ControlInput pid_controls(const QuadState& est, const Reference& ref,
                          const AttitudeCommand& cmd, const PidGains& g,
                          const QuadParams& p);

// Estimated lateral accelerations fed to the second-order law (built from
// the model drift terms plus the previously commanded thrust).
struct AccelEstimate {
  double ax = 0.0;
  double ay = 0.0;
};

// Second-order sliding-mode commands plus the four surface values (s1 is
// the altitude surface the thrust acts on and is what the harness logs).
struct SosmcCommand {
  ControlInput u;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
};

// Second-order sliding-mode baseline. Throws AttitudeSingular when
// |cos(phi)cos(theta)| < 0.1 (thrust law ill posed) and InvalidGains on
// non-positive gains.
SosmcCommand sosmc_controls(const QuadState& est, const Reference& ref,
                            const AttitudeCommand& cmd,
                            const AccelEstimate& acc, const SosmcGains& g,
                            const QuadParams& p);

}  // namespace quadsim
