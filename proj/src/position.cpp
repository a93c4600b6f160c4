#include "quadsim/position.hpp"

#include <cmath>

#include "quadsim/attitude.hpp"
#include "quadsim/errors.hpp"

namespace quadsim {

namespace {

// Hard threshold below which a control denominator counts as collapsed.
constexpr double kDenFloor = 1e-9;

void check_den(double den, const char* what) {
  if (!(std::abs(den) >= kDenFloor)) {
    throw DegenerateDenominator(what);
  }
}

struct AxisErrors {
  double e1, e2;  // x - x_r, vx - dx_r
  double e3, e4;  // y - y_r, vy - dy_r
  double e5, e6;  // z - z_r, vz - dz_r
};

AxisErrors axis_errors(const QuadState& est, const Reference& ref) {
  return AxisErrors{est.x - ref.x_r,  est.vx - ref.dx_r, est.y - ref.y_r,
                    est.vy - ref.dy_r, est.z - ref.z_r,  est.vz - ref.dz_r};
}

}  // namespace

HsmcGains HsmcGains::aggregated_defaults() {
  HsmcGains g;
  g.c1 = 0.05;
  g.c2 = 0.05;
  g.c3 = 1.0;
  g.lambda1 = 0.05;
  g.lambda2 = 0.05;
  g.K_reach = 0.34;
  g.eta = 0.25;
  return g;
}

HsmcGains HsmcGains::incremental_defaults() {
  HsmcGains g;
  g.c1 = 0.05;
  g.c2 = 0.05;
  g.c3 = 0.05;
  g.c4 = 10.05;
  g.c5 = 3.25;
  g.K_reach = 0.75;
  g.eta = 0.25;
  return g;
}

HsmcGains HsmcGains::combining_defaults() {
  HsmcGains g;
  g.c1 = 0.05;
  g.c2 = 0.05;
  g.c3 = 1.0;
  g.alpha = 1.5;
  g.K_reach = 0.5;
  g.eta = 0.25;
  return g;
}

FbTerms fb_terms(const QuadState& est, const QuadParams& p, double b_floor) {
  if (b_floor < 0.0) {
    throw OutOfRange("fb_terms: b_floor must be non-negative");
  }
  const double sph = std::sin(est.phi), cph = std::cos(est.phi);
  const double sth = std::sin(est.theta), cth = std::cos(est.theta);
  const double sps = std::sin(est.psi), cps = std::cos(est.psi);
  FbTerms t;
  t.f_x = -p.Kdx * est.vx / p.m;
  t.f_y = -p.Kdy * est.vy / p.m;
  t.f_z = -p.Kdz * est.vz / p.m - p.g;
  t.b_x = (sps * sph + cps * sth * cph) / p.m;
  t.b_y = (sps * sth * cph - cps * sph) / p.m;
  t.b_z = cth * cph / p.m;
  const double fl = b_floor / p.m;
  if (std::abs(t.b_x) < fl) t.b_x = t.b_x >= 0.0 ? fl : -fl;
  if (std::abs(t.b_y) < fl) t.b_y = t.b_y >= 0.0 ? fl : -fl;
  return t;
}

ThrustCommand ahsmc_thrust(const QuadState& est, const Reference& ref,
                           const HsmcGains& g, const QuadParams& p) {
  if (!(g.c1 > 0.0 && g.c2 > 0.0 && g.c3 > 0.0 && g.lambda1 > 0.0 &&
        g.lambda2 > 0.0 && g.K_reach > 0.0 && g.eta > 0.0)) {
    throw InvalidGains(
        "aggregated law needs positive c1..c3, lambda1, lambda2, K_reach, "
        "eta");
  }
  const FbTerms t = fb_terms(est, p, g.b_floor);
  const AxisErrors e = axis_errors(est, ref);

  const double s1 = g.c1 * e.e1 + e.e2;
  const double s2 = g.c2 * e.e3 + e.e4;
  const double s3 = g.c3 * e.e5 + e.e6;
  const double S1 = s1;
  const double S2 = g.lambda1 * S1 + s2;
  const double S3 = g.lambda2 * S2 + s3;

  check_den(t.b_x, "aggregated law: x input gain collapsed");
  check_den(t.b_y, "aggregated law: y input gain collapsed");
  check_den(t.b_z, "aggregated law: z input gain collapsed");
  const double ueq_x = (-g.c1 * e.e2 + ref.ddx_r - t.f_x) / t.b_x;
  const double ueq_y = (-g.c2 * e.e4 + ref.ddy_r - t.f_y) / t.b_y;
  const double ueq_z = (-g.c3 * e.e6 + ref.ddz_r - t.f_z) / t.b_z;

  const double den =
      g.lambda1 * g.lambda2 * t.b_x + g.lambda2 * t.b_y + t.b_z;
  check_den(den, "aggregated law: layer denominator collapsed");
  const double u_sw = -(g.lambda1 * g.lambda2 * t.b_x * (ueq_y + ueq_z) +
                        g.lambda2 * t.b_y * (ueq_x + ueq_z) +
                        t.b_z * (ueq_x + ueq_y) + g.K_reach * S3 +
                        g.eta * sat(S3)) /
                      den;

  ThrustCommand cmd;
  cmd.Fz = ueq_x + ueq_y + ueq_z + u_sw;
  cmd.surfaces.v = {s1, s2, s3, S1, S2, S3};
  cmd.surfaces.n = 6;
  cmd.surfaces.top = S3;
  return cmd;
}

ThrustCommand ihsmc_thrust(const QuadState& est, const Reference& ref,
                           const HsmcGains& g, const QuadParams& p) {
  if (!(g.c1 > 0.0 && g.c2 > 0.0 && g.c3 > 0.0 && g.c4 > 0.0 && g.c5 > 0.0 &&
        g.K_reach > 0.0 && g.eta > 0.0)) {
    throw InvalidGains("incremental law needs positive c1..c5, K_reach, eta");
  }
  const FbTerms t = fb_terms(est, p, g.b_floor);
  const AxisErrors e = axis_errors(est, ref);

  const double s1 = g.c1 * e.e2 + e.e1;
  const double s2 = g.c2 * e.e3 + s1;
  const double s3 = g.c3 * e.e4 + s2;
  const double s4 = g.c4 * e.e5 + s3;
  const double s5 = g.c5 * e.e6 + s4;

  const double den = g.c5 * t.b_z + g.c3 * t.b_y + g.c1 * t.b_x;
  check_den(den, "incremental law: denominator collapsed");
  const double ueq = -(g.c5 * t.f_z + g.c3 * t.f_y + g.c1 * t.f_x +
                       g.c4 * e.e6 + g.c2 * e.e4 + e.e2 - g.c5 * ref.ddz_r -
                       g.c3 * ref.ddy_r - g.c1 * ref.ddx_r) /
                     den;
  const double u_sw = -(g.K_reach * s5 + g.eta * sat(s5)) / den;

  ThrustCommand cmd;
  cmd.Fz = ueq + u_sw;
  cmd.surfaces.v = {s1, s2, s3, s4, s5, 0.0};
  cmd.surfaces.n = 5;
  cmd.surfaces.top = s5;
  return cmd;
}

ThrustCommand chsmc_thrust(const QuadState& est, const Reference& ref,
                           const HsmcGains& g, const QuadParams& p) {
  if (!(g.c1 > 0.0 && g.c2 > 0.0 && g.c3 > 0.0 && g.alpha > 0.0 &&
        g.K_reach > 0.0 && g.eta > 0.0)) {
    throw InvalidGains(
        "combining law needs positive c1..c3, alpha, K_reach, eta");
  }
  const FbTerms t = fb_terms(est, p, g.b_floor);
  const AxisErrors e = axis_errors(est, ref);

  const double s = g.c1 * e.e1 + g.c2 * e.e3 + g.c3 * e.e5;
  const double ds = g.c1 * e.e2 + g.c2 * e.e4 + g.c3 * e.e6;
  const double S = g.alpha * s + ds;

  const double den = g.c1 * t.b_x + g.c2 * t.b_y + g.c3 * t.b_z;
  check_den(den, "combining law: denominator collapsed");
  const double ueq = -(g.c1 * t.f_x + g.c2 * t.f_y + g.c3 * t.f_z -
                       g.c1 * ref.ddx_r - g.c2 * ref.ddy_r -
                       g.c3 * ref.ddz_r + g.alpha * ds) /
                     den;
  const double u_sw = -(g.K_reach * S + g.eta * sat(S)) / den;

  ThrustCommand cmd;
  cmd.Fz = ueq + u_sw;
  cmd.surfaces.v = {s, ds, S, 0.0, 0.0, 0.0};
  cmd.surfaces.n = 3;
  cmd.surfaces.top = S;
  return cmd;
}

}  // namespace quadsim
