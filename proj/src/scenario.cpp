#include "quadsim/scenario.hpp"

#include <cmath>
#include <numbers>

#include "quadsim/errors.hpp"

namespace quadsim {

ScenarioSpec ScenarioSpec::by_id(int id) {
  switch (id) {
    case 1:
      return ScenarioSpec{1, 15.0};
    case 2:
      return ScenarioSpec{2, 60.0};
    case 3:
      return ScenarioSpec{3, 60.0};
    default:
      throw OutOfRange("scenario id must be 1, 2 or 3");
  }
}

Reference reference_at(double t, const ScenarioSpec& s) {
  constexpr double kSlack = 1e-9;
  if (!(t >= -kSlack) || !(t <= s.duration + kSlack)) {
    throw OutOfRange("reference_at: time outside scenario duration");
  }
  Reference r;
  switch (s.id) {
    case 1:
      r.x_r = 12.0;
      r.y_r = 12.0;
      r.z_r = 12.0;
      r.psi_r = 0.5;
      break;
    case 2: {
      const double w = std::numbers::pi / 5.0;
      r.x_r = std::sin(w * t);
      r.dx_r = w * std::cos(w * t);
      r.ddx_r = -w * w * std::sin(w * t);
      r.y_r = -1.0 + std::cos(w * t);
      r.dy_r = -w * std::sin(w * t);
      r.ddy_r = -w * w * std::cos(w * t);
      r.z_r = 0.5 * t;
      r.dz_r = 0.5;
      r.psi_r = 0.5;
      break;
    }
    case 3: {
      // Six 10 s setpoint segments, right-continuous at the switch times.
      double v[4];
      if (t < 10.0) {
        v[0] = 3.0, v[1] = 3.0, v[2] = 3.0, v[3] = 0.2;
      } else if (t < 20.0) {
        v[0] = 1.5, v[1] = 3.0, v[2] = 3.0, v[3] = 0.2;
      } else if (t < 30.0) {
        v[0] = 1.5, v[1] = 1.5, v[2] = 3.0, v[3] = 0.2;
      } else if (t < 40.0) {
        v[0] = 3.0, v[1] = 1.5, v[2] = 3.0, v[3] = 0.4;
      } else if (t < 50.0) {
        v[0] = 3.0, v[1] = 3.0, v[2] = 3.0, v[3] = 0.4;
      } else {
        v[0] = 3.0, v[1] = 3.0, v[2] = 0.0, v[3] = 0.4;
      }
      r.x_r = v[0];
      r.y_r = v[1];
      r.z_r = v[2];
      r.psi_r = v[3];
      break;
    }
    default:
      throw OutOfRange("reference_at: scenario id must be 1, 2 or 3");
  }
  return r;
}

}  // namespace quadsim
