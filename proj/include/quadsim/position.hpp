#pragma once

#include <array>

#include "quadsim/scenario.hpp"
#include "quadsim/types.hpp"

namespace quadsim {

// Gains of the hierarchical sliding-mode thrust laws. One record covers all
// three variants; each law validates the subset it uses.
struct HsmcGains {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;  // surface slopes, all variants
  double c4 = 0.0, c5 = 0.0;            // extra slopes, incremental variant
  double lambda1 = 0.0, lambda2 = 0.0;  // layer weights, aggregated variant
  double alpha = 0.0;                   // surface weight, combining variant
  double K_reach = 0.0;                 // reaching gain
  double eta = 0.0;                     // switching gain
  double b_floor = 1e-2;  // lateral input-gain floor numerator (b >= b_floor/m)

  static HsmcGains aggregated_defaults();
  static HsmcGains incremental_defaults();
  static HsmcGains combining_defaults();
};

// Drift (f) and input-gain (b) coefficients of the three translational
// acceleration channels, evaluated on the estimate:
//   x:  f = -Kdx*vx/m   b = (sin(psi)sin(phi) + cos(psi)sin(theta)cos(phi))/m
//   y:  f = -Kdy*vy/m   b = (sin(psi)sin(theta)cos(phi) - cos(psi)sin(phi))/m
//   z:  f = -Kdz*vz/m - g   b = cos(theta)cos(phi)/m
// The x/y gains pass through zero whenever the vehicle is near level, so
// their magnitude is floored at b_floor/m with the sign preserved
// (sign(0) = +1). The z gain stays cosine-bounded away from zero in the
// clamped-tilt regime and is returned untouched. b_floor = 0 disables the
// floor and yields the raw model coefficients.
struct FbTerms {
  double f_x = 0.0, f_y = 0.0, f_z = 0.0;
  double b_x = 0.0, b_y = 0.0, b_z = 0.0;
};
FbTerms fb_terms(const QuadState& est, const QuadParams& p, double b_floor);

// Per-step surface values for logging and analysis. v holds the variant's
// surface stack bottom-up (n entries used); top is the aggregated value the
// reaching law acts on.
struct SurfaceDiagnostics {
  std::array<double, 6> v{};
  int n = 0;
  double top = 0.0;
};

struct ThrustCommand {
  double Fz = 0.0;
  SurfaceDiagnostics surfaces;
};

// Aggregated variant. Lower surfaces s_i = c_i*e_pos + e_vel per axis are
// combined in layers S1 = s1, S2 = lambda1*S1 + s2, S3 = lambda2*S2 + s3;
// the thrust is the sum of the three per-axis equivalent controls plus a
// switching term which enforces dS3/dt = -K_reach*S3 - eta*sat(S3).
// Surface stack logged: s1, s2, s3, S1, S2, S3 (top = S3).
// Throws InvalidGains (non-positive c1..c3, lambda1, lambda2, K_reach, eta)
// and DegenerateDenominator.
ThrustCommand ahsmc_thrust(const QuadState& est, const Reference& ref,
                           const HsmcGains& g, const QuadParams& p);

// Incremental variant: five stacked surfaces
//   s1 = c1*e_vx + e_x,  s2 = c2*e_y + s1,  s3 = c3*e_vy + s2,
//   s4 = c4*e_z + s3,    s5 = c5*e_vz + s4
// with a single equivalent/switching pair enforcing
// ds5/dt = -K_reach*s5 - eta*sat(s5). Surface stack: s1..s5 (top = s5).
// Throws InvalidGains (c1..c5, K_reach, eta) and DegenerateDenominator.
ThrustCommand ihsmc_thrust(const QuadState& est, const Reference& ref,
                           const HsmcGains& g, const QuadParams& p);

// Combining variant: one position surface s = c1*e_x + c2*e_y + c3*e_z, its
// derivative ds, and the combined surface S = alpha*s + ds, with the law
// enforcing dS/dt = -K_reach*S - eta*sat(S). Surface stack: s, ds, S
// (top = S). Throws InvalidGains (c1..c3, alpha, K_reach, eta) and
// DegenerateDenominator.
ThrustCommand chsmc_thrust(const QuadState& est, const Reference& ref,
                           const HsmcGains& g, const QuadParams& p);

}  // namespace quadsim
