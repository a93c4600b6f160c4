#pragma once

#include <stdexcept>
#include <string>

namespace quadsim {

// Base class for every domain error thrown by this library.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A state, input or intermediate quantity stopped being finite.
struct NonFiniteError : SimError {
  using SimError::SimError;
};

// The rotor allocation matrix cannot be inverted (degenerate kt/kd/l).
struct SingularAllocation : SimError {
  using SimError::SimError;
};

// A commanded wrench would require a negative squared rotor speed.
struct InfeasibleCommand : SimError {
  using SimError::SimError;
};

// The innovation covariance is not safely invertible.
struct SingularInnovation : SimError {
  using SimError::SimError;
};

// A controller gain violates its positivity requirement.
struct InvalidGains : SimError {
  using SimError::SimError;
};

// A sliding-mode control denominator collapsed below its safe threshold.
struct DegenerateDenominator : SimError {
  using SimError::SimError;
};

// The vehicle attitude left the region where the thrust law is well posed.
struct AttitudeSingular : SimError {
  using SimError::SimError;
};

// A query (time, scenario id, ...) fell outside its valid range.
struct OutOfRange : SimError {
  using SimError::SimError;
};

// A metrics window selected no log rows.
struct EmptyWindow : SimError {
  using SimError::SimError;
};

// Filesystem-level read/write failure.
struct IoError : SimError {
  using SimError::SimError;
};

// A CSV file does not carry the expected column schema.
struct SchemaMismatch : SimError {
  using SimError::SimError;
};

// Malformed configuration file, unknown key, or invalid value.
struct ConfigError : SimError {
  using SimError::SimError;
};

// A closed-loop run left the sane state envelope. Carries the step index
// and simulated time at which the bound was crossed.
struct DivergedRun : SimError {
  DivergedRun(int step_in, double t_in, const std::string& msg)
      : SimError(msg), step(step_in), t(t_in) {}
  int step;
  double t;
};

}  // namespace quadsim
