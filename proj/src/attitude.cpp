#include "quadsim/attitude.hpp"

#include <algorithm>
#include <numbers>

#include "quadsim/errors.hpp"

namespace quadsim {

double sat(double v) { return std::clamp(v, -1.0, 1.0); }

void AttitudeGains::validate() const {
  const bool ok = kpx > 0.0 && kdx > 0.0 && kpy > 0.0 && kdy > 0.0 &&
                  c_phi > 0.0 && c_theta > 0.0 && c_psi > 0.0 &&
                  K_phi > 0.0 && K_theta > 0.0 && K_psi > 0.0;
  if (!ok) {
    throw InvalidGains("attitude gains must all be strictly positive");
  }
}

TiltReference reference_angles(const QuadState& est, const Reference& ref,
                               const AttitudeGains& g) {
  constexpr double kClamp = std::numbers::pi / 4.0;
  TiltReference out;
  out.phi_r = std::clamp(
      g.kpy * (est.y - ref.y_r) - g.kdy * (ref.dy_r - est.vy), -kClamp,
      kClamp);
  out.theta_r = std::clamp(
      g.kpx * (ref.x_r - est.x) - g.kdx * (est.vx - ref.dx_r), -kClamp,
      kClamp);
  return out;
}

BackwardDiff::Derivs BackwardDiff::push(double value, double ts) {
  if (!(ts > 0.0)) {
    throw OutOfRange("BackwardDiff::push: ts must be positive");
  }
  Derivs d;
  if (n_ >= 2) {
    d.d = (value - prev1_) / ts;
    d.dd = (value - 2.0 * prev1_ + prev2_) / (ts * ts);
  }
  prev2_ = prev1_;
  prev1_ = value;
  if (n_ < 2) ++n_;
  return d;
}

void BackwardDiff::reset() {
  n_ = 0;
  prev1_ = 0.0;
  prev2_ = 0.0;
}

BodyTorques attitude_torques(const QuadState& est, const AttitudeCommand& cmd,
                             const QuadParams& p, const AttitudeGains& g) {
  g.validate();
  const double f_phi = est.q_rate * est.r_rate * (p.Iyy - p.Izz) / p.Ixx;
  const double f_theta = est.p_rate * est.r_rate * (p.Izz - p.Ixx) / p.Iyy;
  const double f_psi = est.p_rate * est.q_rate * (p.Ixx - p.Iyy) / p.Izz;

  const double s_phi =
      g.c_phi * (est.phi - cmd.phi.r) + (est.p_rate - cmd.phi.dr);
  const double s_theta =
      g.c_theta * (est.theta - cmd.theta.r) + (est.q_rate - cmd.theta.dr);
  const double s_psi =
      g.c_psi * (est.psi - cmd.psi.r) + (est.r_rate - cmd.psi.dr);

  BodyTorques out;
  out.C1 = p.Ixx * (-g.c_phi * est.phi - (g.c_phi + 1.0) * est.p_rate +
                    g.c_phi * cmd.phi.r + (g.c_phi + 1.0) * cmd.phi.dr -
                    f_phi - g.K_phi * sat(s_phi) + cmd.phi.ddr);
  out.C2 = p.Iyy * (-g.c_theta * est.theta - (g.c_theta + 1.0) * est.q_rate +
                    g.c_theta * cmd.theta.r + (g.c_theta + 1.0) * cmd.theta.dr -
                    f_theta - g.K_theta * sat(s_theta) + cmd.theta.ddr);
  out.C3 = p.Izz * (-g.c_psi * est.psi - (g.c_psi + 1.0) * est.r_rate +
                    g.c_psi * cmd.psi.r + (g.c_psi + 1.0) * cmd.psi.dr -
                    f_psi - g.K_psi * sat(s_psi) + cmd.psi.ddr);
  return out;
}

}  // namespace quadsim
