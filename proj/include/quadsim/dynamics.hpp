#pragma once

#include "quadsim/rng.hpp"
#include "quadsim/types.hpp"

namespace quadsim {

// Continuous-time state derivative of the rigid-body plant: drag-damped
// translational double integrators driven by the tilted thrust projection,
// and rotational double integrators with gyroscopic cross coupling driven by
// the body torques. Throws NonFiniteError if the inputs or the result are
// not finite.
Vec12 derivative(const QuadState& s, const ControlInput& u,
                 const QuadParams& p);

// One classical fourth-order Runge-Kutta step of length ts with the input
// held constant across the step. Throws NonFiniteError (via derivative) and
// requires ts > 0.
QuadState rk4_step(const QuadState& s, const ControlInput& u,
                   const QuadParams& p, double ts);

// Rotor map: squared rotor speeds to collective thrust and body torques.
ControlInput mix(const MotorSpeedsSq& w, const QuadParams& p);

// Exact inverse of mix(). Throws SingularAllocation when the map is not
// invertible and InfeasibleCommand when the wrench would require a negative
// squared rotor speed (beyond a -1e-9 roundoff allowance, which is clamped
// to zero).
MotorSpeedsSq unmix(const ControlInput& u, const QuadParams& p);

// Adds independent zero-mean Gaussian noise of variance cov_scale to every
// component. cov_scale = 0 returns the vector unchanged without consuming
// any draws; negative cov_scale is an error.
Vec12 perturb(const Vec12& v, double cov_scale, Rng& rng);

}  // namespace quadsim
