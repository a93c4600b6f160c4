#include "quadsim/linearize.hpp"

#include <cmath>

#include "quadsim/errors.hpp"

namespace quadsim {

Mat12 jacobian_A(const QuadState& s, const QuadParams& p) {
  if (!s.finite()) {
    throw NonFiniteError("jacobian_A: non-finite state");
  }
  Mat12 A = Mat12::Zero();
  A.block<6, 6>(0, 6).setIdentity();
  A(kIdxVx, kIdxVx) = -p.Kdx / p.m;
  A(kIdxVy, kIdxVy) = -p.Kdy / p.m;
  A(kIdxVz, kIdxVz) = -p.Kdz / p.m;
  // Gyroscopic cross terms, linearized in the angular rates.
  A(kIdxDphi, kIdxDtheta) = s.r_rate * (p.Iyy - p.Izz) / p.Ixx;
  A(kIdxDphi, kIdxDpsi) = s.q_rate * (p.Iyy - p.Izz) / p.Ixx;
  A(kIdxDtheta, kIdxDphi) = s.r_rate * (p.Izz - p.Ixx) / p.Iyy;
  A(kIdxDtheta, kIdxDpsi) = s.p_rate * (p.Izz - p.Ixx) / p.Iyy;
  A(kIdxDpsi, kIdxDphi) = s.q_rate * (p.Ixx - p.Iyy) / p.Izz;
  A(kIdxDpsi, kIdxDtheta) = s.p_rate * (p.Ixx - p.Iyy) / p.Izz;
  return A;
}

Mat12x4 jacobian_B(const QuadState& s, const QuadParams& p) {
  if (!s.finite()) {
    throw NonFiniteError("jacobian_B: non-finite state");
  }
  const double sph = std::sin(s.phi), cph = std::cos(s.phi);
  const double sth = std::sin(s.theta), cth = std::cos(s.theta);
  const double sps = std::sin(s.psi), cps = std::cos(s.psi);
  Mat12x4 B = Mat12x4::Zero();
  B(kIdxVx, 0) = (sps * sph + cps * sth * cph) / p.m;
  B(kIdxVy, 0) = (sps * sth * cph - cps * sph) / p.m;
  B(kIdxVz, 0) = cth * cph / p.m;
  B(kIdxDphi, 1) = 1.0 / p.Ixx;
  B(kIdxDtheta, 2) = 1.0 / p.Iyy;
  B(kIdxDpsi, 3) = 1.0 / p.Izz;
  return B;
}

}  // namespace quadsim
