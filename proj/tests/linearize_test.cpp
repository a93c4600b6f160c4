#include <cmath>
#include <random>

#include "doctest.h"
#include "quadsim/dynamics.hpp"
#include "quadsim/linearize.hpp"
#include "test_util.hpp"

using namespace quadsim;

namespace {

// The input Jacobian owns the tilt-to-thrust dependence, so the state
// Jacobian is differentiated against the plant with that coupling frozen at
// the expansion point: g(X) = f(X, u) - B(X) e1 Fz + B(X0) e1 Fz.
Vec12 frozen_coupling_deriv(const QuadState& s, const Mat12x4& B0,
                            const ControlInput& u, const QuadParams& p) {
  Vec12 d = derivative(s, u, p);
  d -= jacobian_B(s, p).col(0) * u.Fz;
  d += B0.col(0) * u.Fz;
  return d;
}

}  // namespace

TEST_SUITE("linearize") {

TEST_CASE("state Jacobian blocks at rest") {
  const QuadParams p;
  const Mat12 A = jacobian_A(QuadState{}, p);
  CHECK(A.topLeftCorner(6, 6).cwiseAbs().maxCoeff() == 0.0);
  CHECK((A.topRightCorner(6, 6) - Eigen::MatrixXd::Identity(6, 6))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(A.bottomLeftCorner(6, 6).cwiseAbs().maxCoeff() == 0.0);
  CHECK(A(kIdxVx, kIdxVx) == -p.Kdx / p.m);
  CHECK(A(kIdxVy, kIdxVy) == -p.Kdy / p.m);
  CHECK(A(kIdxVz, kIdxVz) == -p.Kdz / p.m);
  CHECK(std::abs(A(kIdxVx, kIdxVx) - (-2.8403061224489796e-4)) < 1e-16);
  // the gyroscopic block vanishes at rest
  CHECK(A.bottomRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gyroscopic cross terms at operating rates") {
  const QuadParams p;
  QuadState s;
  s.q_rate = 2.0;
  s.r_rate = 1.0;
  const Mat12 A = jacobian_A(s, p);
  // d(phi_dd)/dq = r (Iyy - Izz)/Ixx, d(phi_dd)/dr = q (Iyy - Izz)/Ixx
  CHECK(std::abs(A(kIdxDphi, kIdxDtheta) - (-2.5436241610738253)) < 1e-12);
  CHECK(std::abs(A(kIdxDphi, kIdxDpsi) - (-5.0872483221476505)) < 1e-12);
  CHECK(A(kIdxDphi, kIdxDphi) == 0.0);
  // d(theta_dd)/dp = r (Izz - Ixx)/Iyy; the p-rate is zero here so the
  // r-column of the theta row carries nothing
  CHECK(std::abs(A(kIdxDtheta, kIdxDphi) -
                 s.r_rate * (p.Izz - p.Ixx) / p.Iyy) < 1e-12);
  CHECK(A(kIdxDtheta, kIdxDpsi) == 0.0);
  // d(psi_dd)/dq = p (Ixx - Iyy)/Izz is likewise zero; the p-column carries
  // q (Ixx - Iyy)/Izz
  CHECK(std::abs(A(kIdxDpsi, kIdxDphi) -
                 s.q_rate * (p.Ixx - p.Iyy) / p.Izz) < 1e-12);
  CHECK(A(kIdxDpsi, kIdxDtheta) == 0.0);
}

TEST_CASE("position and yaw columns stay structurally zero") {
  const QuadParams p;
  std::mt19937_64 g(11);
  for (int i = 0; i < 50; ++i) {
    const QuadState s = testutil::random_state(g);
    const Mat12 A = jacobian_A(s, p);
    CHECK(A.col(kIdxX).cwiseAbs().maxCoeff() == 0.0);
    CHECK(A.col(kIdxY).cwiseAbs().maxCoeff() == 0.0);
    CHECK(A.col(kIdxZ).cwiseAbs().maxCoeff() == 0.0);
    CHECK(A.col(kIdxPsi).cwiseAbs().maxCoeff() == 0.0);
    CHECK(A.topLeftCorner(6, 6).cwiseAbs().maxCoeff() == 0.0);
    CHECK((A.topRightCorner(6, 6) - Eigen::MatrixXd::Identity(6, 6))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("input Jacobian at level rest") {
  const QuadParams p;
  const Mat12x4 B = jacobian_B(QuadState{}, p);
  CHECK(B(kIdxVx, 0) == 0.0);
  CHECK(B(kIdxVy, 0) == 0.0);
  CHECK(B(kIdxVz, 0) == 1.0 / p.m);
  CHECK(std::abs(B(kIdxVz, 0) - 0.5102040816326531) < 1e-15);
  CHECK(std::abs(B(kIdxDphi, 1) - 671.1409395973154) < 1e-10);
  CHECK(std::abs(B(kIdxDtheta, 2) - 653.5947712418301) < 1e-10);
  CHECK(std::abs(B(kIdxDpsi, 3) - 187.9699248120301) < 1e-10);
  // nothing else is populated: removing the five known entries leaves zero
  Mat12x4 rest = B;
  rest(kIdxVz, 0) = 0.0;
  rest(kIdxDphi, 1) = 0.0;
  rest(kIdxDtheta, 2) = 0.0;
  rest(kIdxDpsi, 3) = 0.0;
  CHECK(rest.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("thrust column follows the attitude") {
  const QuadParams p;
  QuadState s;
  s.phi = 0.3;
  s.theta = -0.2;
  s.psi = 0.7;
  const Mat12x4 B = jacobian_B(s, p);
  const double sphi = std::sin(s.phi), cphi = std::cos(s.phi);
  const double sth = std::sin(s.theta), cth = std::cos(s.theta);
  const double spsi = std::sin(s.psi), cpsi = std::cos(s.psi);
  CHECK(std::abs(B(kIdxVx, 0) - (spsi * sphi + cpsi * sth * cphi) / p.m) <
        1e-15);
  CHECK(std::abs(B(kIdxVy, 0) - (spsi * sth * cphi - cpsi * sphi) / p.m) <
        1e-15);
  CHECK(std::abs(B(kIdxVz, 0) - (cth * cphi) / p.m) < 1e-15);
  CHECK(B.topRows(6).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("finite differences confirm the state Jacobian") {
  const QuadParams p;
  std::mt19937_64 g(77);
  const double h = 1e-6;
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const QuadState s0 = testutil::random_state(g);
    ControlInput u;
    u.Fz = testutil::uniform_in(g, 15.0, 25.0);
    u.C1 = testutil::uniform_in(g, -0.01, 0.01);
    u.C2 = testutil::uniform_in(g, -0.01, 0.01);
    u.C3 = testutil::uniform_in(g, -0.01, 0.01);
    const Mat12x4 B0 = jacobian_B(s0, p);
    const Mat12 A = jacobian_A(s0, p);
    const Vec12 x0 = s0.to_vector();
    for (int j = 0; j < 12; ++j) {
      Vec12 hi = x0, lo = x0;
      hi(j) += h;
      lo(j) -= h;
      const Vec12 col =
          (frozen_coupling_deriv(QuadState::from_vector(hi), B0, u, p) -
           frozen_coupling_deriv(QuadState::from_vector(lo), B0, u, p)) /
          (2.0 * h);
      for (int i = 0; i < 12; ++i) {
        worst = std::max(worst, std::abs(col(i) - A(i, j)) /
                                    std::max(1.0, std::abs(A(i, j))));
      }
    }
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("finite differences confirm the input Jacobian") {
  const QuadParams p;
  std::mt19937_64 g(78);
  const double h = 1e-4;
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const QuadState s0 = testutil::random_state(g);
    ControlInput u;
    u.Fz = testutil::uniform_in(g, 15.0, 25.0);
    u.C1 = testutil::uniform_in(g, -0.01, 0.01);
    u.C2 = testutil::uniform_in(g, -0.01, 0.01);
    u.C3 = testutil::uniform_in(g, -0.01, 0.01);
    const Mat12x4 B = jacobian_B(s0, p);
    for (int j = 0; j < 4; ++j) {
      ControlInput uh = u, ul = u;
      double* fh[4] = {&uh.Fz, &uh.C1, &uh.C2, &uh.C3};
      double* fl[4] = {&ul.Fz, &ul.C1, &ul.C2, &ul.C3};
      *fh[j] += h;
      *fl[j] -= h;
      const Vec12 col =
          (derivative(s0, uh, p) - derivative(s0, ul, p)) / (2.0 * h);
      // the plant is affine in the input, so central differences match the
      // Jacobian to roundoff
      for (int i = 0; i < 12; ++i) {
        worst = std::max(worst, std::abs(col(i) - B(i, j)) /
                                    std::max(1.0, std::abs(B(i, j))));
      }
    }
  }
  CHECK(worst < 1e-7);
}

}  // TEST_SUITE
