#include "quadsim/baselines.hpp"

#include <cmath>

#include "quadsim/errors.hpp"

namespace quadsim {

void PidGains::validate() const {
  const bool ok = kpz > 0.0 && kdz > 0.0 && kp_phi > 0.0 && kd_phi > 0.0 &&
                  kp_theta > 0.0 && kd_theta > 0.0 && kp_psi > 0.0 &&
                  kd_psi > 0.0;
  if (!ok) {
    throw InvalidGains("PD baseline gains must all be strictly positive");
  }
}

void SosmcGains::validate() const {
  const bool ok = c1 > 0.0 && c2 > 0.0 && c3 > 0.0 && c4 > 0.0 && c5 > 0.0 &&
                  c6 > 0.0 && c7 > 0.0 && c8 > 0.0 && eps1 > 0.0 &&
                  eps2 > 0.0 && eps3 > 0.0 && eps4 > 0.0 && eta1 > 0.0 &&
                  eta2 > 0.0 && eta3 > 0.0 && eta4 > 0.0 && c_z > 0.0 &&
                  c_psi > 0.0;
  if (!ok) {
    throw InvalidGains(
        "second-order sliding-mode gains must all be strictly positive");
  }
}

ControlInput pid_controls(const QuadState& est, const Reference& ref,
                          const AttitudeCommand& cmd, const PidGains& g,
                          const QuadParams& p) {
  g.validate();
  ControlInput u;
  u.Fz = g.kpz * (ref.z_r - est.z) + g.kdz * (ref.dz_r - est.vz) + p.m * p.g;
  u.C1 = g.kp_phi * (cmd.phi.r - est.phi) +
         g.kd_phi * (cmd.phi.dr - est.p_rate);
  u.C2 = g.kp_theta * (cmd.theta.r - est.theta) +
         g.kd_theta * (cmd.theta.dr - est.q_rate);
  u.C3 = g.kp_psi * (cmd.psi.r - est.psi) +
         g.kd_psi * (cmd.psi.dr - est.r_rate);
  return u;
}

SosmcCommand sosmc_controls(const QuadState& est, const Reference& ref,
                            const AttitudeCommand& cmd,
                            const AccelEstimate& acc, const SosmcGains& g,
                            const QuadParams& p) {
  g.validate();
  const double tilt = std::cos(est.phi) * std::cos(est.theta);
  if (std::abs(tilt) < 0.1) {
    throw AttitudeSingular(
        "second-order thrust law ill posed: |cos(phi)cos(theta)| < 0.1");
  }
  const auto sw = [&g](double s) {
    if (g.hard_sign) {
      return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
    }
    return sat(s);
  };
  const double d1 = p.Kdz * est.vz / p.m;
  const double d2 = -est.q_rate * est.r_rate * (p.Iyy - p.Izz) / p.Ixx;
  const double d3 = -est.r_rate * est.p_rate * (p.Izz - p.Ixx) / p.Iyy;
  const double d4 = -est.p_rate * est.q_rate * (p.Ixx - p.Iyy) / p.Izz;

  SosmcCommand out;
  out.s1 = g.c_z * (ref.z_r - est.z) + (ref.dz_r - est.vz);
  out.s2 = g.c1 * (ref.dy_r - est.vy) + g.c2 * (ref.y_r - est.y) +
           g.c3 * (cmd.phi.dr - est.p_rate) + g.c4 * (cmd.phi.r - est.phi);
  out.s3 = g.c5 * (ref.dx_r - est.vx) + g.c6 * (ref.x_r - est.x) +
           g.c7 * (cmd.theta.dr - est.q_rate) +
           g.c8 * (cmd.theta.r - est.theta);
  out.s4 = g.c_psi * (cmd.psi.r - est.psi) + (cmd.psi.dr - est.r_rate);

  out.u.Fz = p.m *
             (g.c_z * (ref.dz_r - est.vz) + ref.ddz_r + p.g + d1 +
              g.eps1 * sw(out.s1) + g.eta1 * out.s1) /
             tilt;
  out.u.C1 = p.Ixx * ((g.c1 / g.c3) * (ref.ddy_r - acc.ay) +
                      (g.c2 / g.c3) * (ref.dy_r - est.vy) + cmd.phi.ddr + d2 +
                      (g.c4 / g.c3) * (cmd.phi.dr - est.p_rate) +
                      (g.eps2 * sw(out.s2) + g.eta2 * out.s2) / g.c3);
  out.u.C2 = p.Iyy * ((g.c5 / g.c7) * (ref.ddx_r - acc.ax) +
                      (g.c6 / g.c7) * (ref.dx_r - est.vx) + cmd.theta.ddr +
                      d3 + (g.c8 / g.c7) * (cmd.theta.dr - est.q_rate) +
                      (g.eps3 * sw(out.s3) + g.eta3 * out.s3) / g.c7);
  out.u.C3 = p.Izz * (g.c_psi * (cmd.psi.dr - est.r_rate) + cmd.psi.ddr + d4 +
                      g.eps4 * sw(out.s4) + g.eta4 * out.s4);
  return out;
}

}  // namespace quadsim
