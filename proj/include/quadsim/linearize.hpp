#pragma once

#include "quadsim/types.hpp"

namespace quadsim {

// State Jacobian of the plant about an operating point, in the block form
//
//   A = [ 0_6  I_6 ]
//       [ 0_6  A1  ]
//
// where A1 = blkdiag(A11, A22), A11 = diag(-Kdx/m, -Kdy/m, -Kdz/m) is the
// drag damping and A22 carries the gyroscopic cross terms, evaluated at the
// operating-point rates. The tilt dependence of the translational
// accelerations is carried by the input Jacobian's operating point rather
// than by A, so the position and yaw columns of A are identically zero.
Mat12 jacobian_A(const QuadState& s, const QuadParams& p);

// Input Jacobian about an operating point:
//
//   B = [ 0_{6x4} ]       B1 = [ B11  0_{3x3} ]
//       [   B1    ]            [ 0    B22     ]
//
// B11 is the thrust projection (per unit thrust) through the operating-point
// attitude divided by mass; B22 = diag(1/Ixx, 1/Iyy, 1/Izz).
Mat12x4 jacobian_B(const QuadState& s, const QuadParams& p);

}  // namespace quadsim
