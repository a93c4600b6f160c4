#include "quadsim/dynamics.hpp"

#include <cmath>

#include "quadsim/errors.hpp"

namespace quadsim {

Vec12 derivative(const QuadState& s, const ControlInput& u,
                 const QuadParams& p) {
  if (!s.finite() || !u.finite()) {
    throw NonFiniteError("derivative: non-finite state or input");
  }
  const double sph = std::sin(s.phi), cph = std::cos(s.phi);
  const double sth = std::sin(s.theta), cth = std::cos(s.theta);
  const double sps = std::sin(s.psi), cps = std::cos(s.psi);

  Vec12 d;
  d(kIdxX) = s.vx;
  d(kIdxY) = s.vy;
  d(kIdxZ) = s.vz;
  d(kIdxPhi) = s.p_rate;
  d(kIdxTheta) = s.q_rate;
  d(kIdxPsi) = s.r_rate;
  d(kIdxVx) = (sps * sph + cps * sth * cph) * u.Fz / p.m - p.Kdx * s.vx / p.m;
  d(kIdxVy) = (sps * sth * cph - cps * sph) * u.Fz / p.m - p.Kdy * s.vy / p.m;
  d(kIdxVz) = cth * cph * u.Fz / p.m - p.Kdz * s.vz / p.m - p.g;
  d(kIdxDphi) =
      s.q_rate * s.r_rate * (p.Iyy - p.Izz) / p.Ixx + u.C1 / p.Ixx;
  d(kIdxDtheta) =
      s.p_rate * s.r_rate * (p.Izz - p.Ixx) / p.Iyy + u.C2 / p.Iyy;
  d(kIdxDpsi) =
      s.p_rate * s.q_rate * (p.Ixx - p.Iyy) / p.Izz + u.C3 / p.Izz;
  if (!d.allFinite()) {
    throw NonFiniteError("derivative: non-finite result");
  }
  return d;
}

QuadState rk4_step(const QuadState& s, const ControlInput& u,
                   const QuadParams& p, double ts) {
  if (!(ts > 0.0)) {
    throw OutOfRange("rk4_step: ts must be positive");
  }
  const Vec12 x0 = s.to_vector();
  const Vec12 k1 = derivative(s, u, p);
  const Vec12 k2 = derivative(QuadState::from_vector(x0 + 0.5 * ts * k1), u, p);
  const Vec12 k3 = derivative(QuadState::from_vector(x0 + 0.5 * ts * k2), u, p);
  const Vec12 k4 = derivative(QuadState::from_vector(x0 + ts * k3), u, p);
  return QuadState::from_vector(x0 +
                                (ts / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

ControlInput mix(const MotorSpeedsSq& w, const QuadParams& p) {
  ControlInput u;
  u.Fz = p.kt * (w.w1 + w.w2 + w.w3 + w.w4);
  u.C1 = p.l * p.kt * (w.w4 - w.w2);
  u.C2 = p.l * p.kt * (w.w3 - w.w1);
  u.C3 = p.kd * ((w.w2 + w.w4) - (w.w1 + w.w3));
  return u;
}

MotorSpeedsSq unmix(const ControlInput& u, const QuadParams& p) {
  if (!(p.kt > 0.0) || !(p.kd > 0.0) || !(p.l > 0.0)) {
    throw SingularAllocation("unmix: kt, kd and l must all be positive");
  }
  const double a = u.Fz / p.kt;            // w1 + w2 + w3 + w4
  const double b = u.C1 / (p.l * p.kt);    // w4 - w2
  const double c = u.C2 / (p.l * p.kt);    // w3 - w1
  const double d = u.C3 / p.kd;            // (w2 + w4) - (w1 + w3)
  const double even = 0.5 * (a + d);       // w2 + w4
  const double odd = 0.5 * (a - d);        // w1 + w3
  MotorSpeedsSq w;
  w.w1 = 0.5 * (odd - c);
  w.w2 = 0.5 * (even - b);
  w.w3 = 0.5 * (odd + c);
  w.w4 = 0.5 * (even + b);
  constexpr double kRoundoff = -1e-9;
  for (double* wi : {&w.w1, &w.w2, &w.w3, &w.w4}) {
    if (*wi < kRoundoff) {
      throw InfeasibleCommand(
          "unmix: commanded wrench needs a negative squared rotor speed");
    }
    if (*wi < 0.0) *wi = 0.0;
  }
  return w;
}

Vec12 perturb(const Vec12& v, double cov_scale, Rng& rng) {
  if (cov_scale < 0.0) {
    throw OutOfRange("perturb: cov_scale must be non-negative");
  }
  if (cov_scale == 0.0) {
    return v;
  }
  const double sd = std::sqrt(cov_scale);
  Vec12 out = v;
  for (int i = 0; i < 12; ++i) {
    out(i) += sd * rng.gaussian();
  }
  return out;
}

}  // namespace quadsim
