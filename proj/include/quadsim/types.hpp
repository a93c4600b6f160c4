#pragma once

#include <Eigen/Core>
#include <cmath>

namespace quadsim {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Mat12 = Eigen::Matrix<double, 12, 12>;
using Mat12x4 = Eigen::Matrix<double, 12, 4>;

// Canonical layout of the 12-dimensional state vector: positions and Euler
// angles first, then their time derivatives. Every module (plant, filter,
// controllers, logger) uses this ordering.
enum StateIndex : int {
  kIdxX = 0,
  kIdxY,
  kIdxZ,
  kIdxPhi,
  kIdxTheta,
  kIdxPsi,
  kIdxVx,
  kIdxVy,
  kIdxVz,
  kIdxDphi,
  kIdxDtheta,
  kIdxDpsi,
};

// Rigid-body state of the vehicle. Angles follow the Z-Y-X Euler convention
// (phi roll, theta pitch, psi yaw). In the low-amplitude regime this model
// targets, body rates are identified with the Euler-angle rates.
struct QuadState {
  double x = 0.0, y = 0.0, z = 0.0;          // inertial position [m]
  double phi = 0.0, theta = 0.0, psi = 0.0;  // attitude [rad]
  double vx = 0.0, vy = 0.0, vz = 0.0;       // inertial velocity [m/s]
  double p_rate = 0.0;                       // d(phi)/dt [rad/s]
  double q_rate = 0.0;                       // d(theta)/dt [rad/s]
  double r_rate = 0.0;                       // d(psi)/dt [rad/s]

  Vec12 to_vector() const {
    Vec12 v;
    v << x, y, z, phi, theta, psi, vx, vy, vz, p_rate, q_rate, r_rate;
    return v;
  }

  static QuadState from_vector(const Vec12& v) {
    QuadState s;
    s.x = v(kIdxX);
    s.y = v(kIdxY);
    s.z = v(kIdxZ);
    s.phi = v(kIdxPhi);
    s.theta = v(kIdxTheta);
    s.psi = v(kIdxPsi);
    s.vx = v(kIdxVx);
    s.vy = v(kIdxVy);
    s.vz = v(kIdxVz);
    s.p_rate = v(kIdxDphi);
    s.q_rate = v(kIdxDtheta);
    s.r_rate = v(kIdxDpsi);
    return s;
  }

  bool finite() const { return to_vector().allFinite(); }
};

// Airframe constants plus the rotor map coefficients.
struct QuadParams {
  double m = 1.96;          // mass [kg]
  double g = 9.81;          // gravitational acceleration [m/s^2]
  double Ixx = 0.00149;     // roll inertia [kg m^2]
  double Iyy = 0.00153;     // pitch inertia [kg m^2]
  double Izz = 0.00532;     // yaw inertia [kg m^2]
  double Kdx = 0.00055670;  // translational drag coefficients [N s/m]
  double Kdy = 0.00055670;
  double Kdz = 0.0006354;
  double kt = 1.2e-5;  // rotor thrust coefficient [N s^2/rad^2]
  double kd = 1.8e-7;  // rotor drag-torque coefficient [N m s^2/rad^2]
  double l = 0.20;     // arm length [m]

  // Masses, inertias, gravity and rotor geometry must be strictly positive;
  // drag coefficients may be zero.
  bool valid() const {
    return m > 0.0 && g > 0.0 && Ixx > 0.0 && Iyy > 0.0 && Izz > 0.0 &&
           Kdx >= 0.0 && Kdy >= 0.0 && Kdz >= 0.0 && kt > 0.0 && kd > 0.0 &&
           l > 0.0;
  }
};

// Collective thrust plus the three body torques (the wrench the mixer
// produces and the plant consumes).
struct ControlInput {
  double Fz = 0.0;  // total thrust along body z [N]
  double C1 = 0.0;  // roll torque [N m]
  double C2 = 0.0;  // pitch torque [N m]
  double C3 = 0.0;  // yaw torque [N m]

  Vec4 to_vector() const { return Vec4(Fz, C1, C2, C3); }

  bool finite() const {
    return std::isfinite(Fz) && std::isfinite(C1) && std::isfinite(C2) &&
           std::isfinite(C3);
  }
};

// Squared rotor angular speeds, the quantity the mixer is linear in.
struct MotorSpeedsSq {
  double w1 = 0.0, w2 = 0.0, w3 = 0.0, w4 = 0.0;  // [rad^2/s^2]
};

}  // namespace quadsim
