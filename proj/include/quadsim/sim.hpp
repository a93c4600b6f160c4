#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadsim/attitude.hpp"
#include "quadsim/baselines.hpp"
#include "quadsim/ekf.hpp"
#include "quadsim/position.hpp"
#include "quadsim/scenario.hpp"
#include "quadsim/types.hpp"

namespace quadsim {

enum class Controller { kAhsmc, kIhsmc, kChsmc, kPid, kSosmc };

// Lower-case controller identifiers used by the CLI, config files and sweep
// file names: "ahsmc", "ihsmc", "chsmc", "pid", "sosmc".
const char* controller_name(Controller c);
Controller controller_from_name(const std::string& name);  // ConfigError

// One logged simulation step: truth, posterior estimate, reference
// positions, the commands computed from that step's estimate, and the top
// sliding-surface value (variant's aggregated surface; s1 for the
// second-order baseline; 0 for PID, which has no surface).
struct LogRow {
  double t = 0.0;
  QuadState truth;
  QuadState est;
  double x_r = 0.0, y_r = 0.0, z_r = 0.0, psi_r = 0.0;
  ControlInput u;
  double s_top = 0.0;
};

struct TimeSeriesLog {
  std::vector<LogRow> rows;
};

// Filter-health and envelope diagnostics accumulated over a run.
struct RunStats {
  int steps = 0;
  double meas_pos_rmse = 0.0;  // raw measurement error RMSE, position axes
  double est_pos_rmse = 0.0;   // posterior estimate error RMSE, position axes
  double min_P_eig = 0.0;      // smallest covariance eigenvalue seen
  double max_P_asym = 0.0;     // largest |P - P'| entry seen
  double max_abs_phi = 0.0;    // true-state tilt extremes [rad]
  double max_abs_theta = 0.0;
  bool tilt_envelope_exceeded = false;  // |phi| or |theta| reached pi/2
};

// Complete description of one closed-loop run. Controller gains not selected
// by `controller` are simply unused.
struct RunConfig {
  int scenario = 1;
  Controller controller = Controller::kAhsmc;
  double ts = 0.01;         // step [s]
  double duration = -1.0;   // <= 0 selects the scenario default
  bool noise = true;
  std::uint64_t seed = 42;
  EkfMode ekf_mode = EkfMode::kStandard;
  QuadParams params;
  NoiseConfig noise_cfg;
  AttitudeGains attitude;
  HsmcGains ahsmc = HsmcGains::aggregated_defaults();
  HsmcGains ihsmc = HsmcGains::incremental_defaults();
  HsmcGains chsmc = HsmcGains::combining_defaults();
  PidGains pid;
  SosmcGains sosmc;
  std::string out_path = "run.csv";  // used by the CLI, not by the harness
};

struct RunResult {
  TimeSeriesLog log;
  RunStats stats;
};

// Runs the measurement -> filter -> control -> actuate loop for the
// configured scenario and returns the full log (N+1 rows for N steps; the
// plant is advanced after a row is logged). Step k of the loop:
//   * measure the true state (plus measurement noise when enabled),
//   * k = 0: initialize the belief from the first measurement (P = 1e-2 I);
//     k > 0: one EKF cycle using the previously applied input,
//   * compute commands from the estimate and the analytic reference,
//   * integrate the plant one RK4 step and add process noise when enabled.
// Throws DivergedRun when any true-state component exceeds 1e6 in magnitude,
// plus the controller/filter errors documented in their headers.
RunResult run_closed_loop(const RunConfig& cfg);

// Tracking metrics over the time window [t0, t1] of a log (inclusive, with
// roundoff slack). Throws EmptyWindow when no rows fall inside.
struct Metrics {
  double rmse_x = 0.0, rmse_y = 0.0, rmse_z = 0.0;   // truth vs reference
  double max_abs_x = 0.0, max_abs_y = 0.0, max_abs_z = 0.0;
  double est_rmse = 0.0;            // estimate vs truth, position axes
  double mean_thrust_offset = 0.0;  // mean |Fz - m g|
  double surface_rms = 0.0;         // RMS of the logged top surface
  double final_err_x = 0.0, final_err_y = 0.0, final_err_z = 0.0;
  double final_err_psi = 0.0;
};
Metrics compute_metrics(const TimeSeriesLog& log, double t0, double t1,
                        const QuadParams& p);

}  // namespace quadsim
