#include "quadsim/sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "quadsim/csv.hpp"
#include "quadsim/dynamics.hpp"
#include "quadsim/errors.hpp"

namespace quadsim {

const char* controller_name(Controller c) {
  switch (c) {
    case Controller::kAhsmc:
      return "ahsmc";
    case Controller::kIhsmc:
      return "ihsmc";
    case Controller::kChsmc:
      return "chsmc";
    case Controller::kPid:
      return "pid";
    case Controller::kSosmc:
      return "sosmc";
  }
  return "unknown";
}

Controller controller_from_name(const std::string& name) {
  if (name == "ahsmc") return Controller::kAhsmc;
  if (name == "ihsmc") return Controller::kIhsmc;
  if (name == "chsmc") return Controller::kChsmc;
  if (name == "pid") return Controller::kPid;
  if (name == "sosmc") return Controller::kSosmc;
  throw ConfigError("unknown controller '" + name +
                    "' (expected ahsmc, ihsmc, chsmc, pid or sosmc)");
}

RunResult run_closed_loop(const RunConfig& cfg) {
  if (!cfg.params.valid()) {
    throw ConfigError("run_closed_loop: invalid airframe parameters");
  }
  if (!(cfg.ts > 0.0)) {
    throw ConfigError("run_closed_loop: ts must be positive");
  }
  const ScenarioSpec spec = ScenarioSpec::by_id(cfg.scenario);
  const double duration = cfg.duration > 0.0 ? cfg.duration : spec.duration;
  const int n_steps = static_cast<int>(std::llround(duration / cfg.ts));
  if (n_steps < 1) {
    throw ConfigError("run_closed_loop: duration shorter than one step");
  }

  Rng rng(cfg.seed);
  QuadState truth;
  EkfBelief belief;
  ControlInput u_prev;
  BackwardDiff phi_r_diff, theta_r_diff;
  double fz_prev = 0.0;

  RunResult out;
  out.log.rows.reserve(static_cast<std::size_t>(n_steps) + 1);

  double meas_sq_sum = 0.0, est_sq_sum = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  double max_asym = 0.0;
  double max_phi = 0.0, max_theta = 0.0;
  bool envelope_hit = false;
  constexpr double kHalfPi = std::numbers::pi / 2.0;

  for (int k = 0; k <= n_steps; ++k) {
    const double t = k * cfg.ts;
    const Vec12 truth_vec = truth.to_vector();

    Vec12 y = truth_vec;
    if (cfg.noise) {
      y = perturb(truth_vec, cfg.noise_cfg.r_scalar, rng);
    }
    if (k == 0) {
      belief.xhat = y;
      belief.P = Mat12::Identity() * 1e-2;
    } else {
      belief = ekf_step(belief, u_prev, y, cfg.params, cfg.ts, cfg.noise_cfg,
                        cfg.ekf_mode);
    }

    for (int i = 0; i < 3; ++i) {
      const double me = y(i) - truth_vec(i);
      const double ee = belief.xhat(i) - truth_vec(i);
      meas_sq_sum += me * me;
      est_sq_sum += ee * ee;
    }
    {
      Eigen::SelfAdjointEigenSolver<Mat12> es(belief.P,
                                              Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
      max_asym = std::max(
          max_asym,
          (belief.P - belief.P.transpose()).cwiseAbs().maxCoeff());
    }
    max_phi = std::max(max_phi, std::abs(truth.phi));
    max_theta = std::max(max_theta, std::abs(truth.theta));
    if (std::abs(truth.phi) >= kHalfPi || std::abs(truth.theta) >= kHalfPi) {
      envelope_hit = true;
    }

    const QuadState est = QuadState::from_vector(belief.xhat);
    const Reference ref = reference_at(t, spec);

    const TiltReference tilt = reference_angles(est, ref, cfg.attitude);
    const BackwardDiff::Derivs dphi = phi_r_diff.push(tilt.phi_r, cfg.ts);
    const BackwardDiff::Derivs dtheta =
        theta_r_diff.push(tilt.theta_r, cfg.ts);
    AttitudeCommand cmd;
    cmd.phi = {tilt.phi_r, dphi.d, dphi.dd};
    cmd.theta = {tilt.theta_r, dtheta.d, dtheta.dd};
    cmd.psi = {ref.psi_r, ref.dpsi_r, ref.ddpsi_r};

    ControlInput u;
    double s_top = 0.0;
    switch (cfg.controller) {
      case Controller::kAhsmc:
      case Controller::kIhsmc:
      case Controller::kChsmc: {
        ThrustCommand tc;
        if (cfg.controller == Controller::kAhsmc) {
          tc = ahsmc_thrust(est, ref, cfg.ahsmc, cfg.params);
        } else if (cfg.controller == Controller::kIhsmc) {
          tc = ihsmc_thrust(est, ref, cfg.ihsmc, cfg.params);
        } else {
          tc = chsmc_thrust(est, ref, cfg.chsmc, cfg.params);
        }
        const BodyTorques tq =
            attitude_torques(est, cmd, cfg.params, cfg.attitude);
        u.Fz = tc.Fz;
        u.C1 = tq.C1;
        u.C2 = tq.C2;
        u.C3 = tq.C3;
        s_top = tc.surfaces.top;
        break;
      }
      case Controller::kPid:
        u = pid_controls(est, ref, cmd, cfg.pid, cfg.params);
        s_top = 0.0;
        break;
      case Controller::kSosmc: {
        const FbTerms raw = fb_terms(est, cfg.params, 0.0);
        AccelEstimate acc;
        acc.ax = raw.f_x + raw.b_x * fz_prev;
        acc.ay = raw.f_y + raw.b_y * fz_prev;
        const SosmcCommand sc =
            sosmc_controls(est, ref, cmd, acc, cfg.sosmc, cfg.params);
        u = sc.u;
        s_top = sc.s1;
        break;
      }
    }
    if (!u.finite()) {
      throw NonFiniteError("run_closed_loop: non-finite command at step " +
                           std::to_string(k));
    }

    LogRow row;
    row.t = t;
    row.truth = truth;
    row.est = est;
    row.x_r = ref.x_r;
    row.y_r = ref.y_r;
    row.z_r = ref.z_r;
    row.psi_r = ref.psi_r;
    row.u = u;
    row.s_top = s_top;
    out.log.rows.push_back(row);

    if (k < n_steps) {
      truth = rk4_step(truth, u, cfg.params, cfg.ts);
      if (cfg.noise) {
        truth = QuadState::from_vector(
            perturb(truth.to_vector(), cfg.noise_cfg.q_scalar, rng));
      }
      u_prev = u;
      fz_prev = u.Fz;
      if (!truth.finite() ||
          truth.to_vector().cwiseAbs().maxCoeff() > 1e6) {
        throw DivergedRun(k + 1, (k + 1) * cfg.ts,
                          "run_closed_loop: state left the sane envelope "
                          "(|component| > 1e6) at step " +
                              std::to_string(k + 1));
      }
    }
  }

  const double n_rows = static_cast<double>(n_steps) + 1.0;
  out.stats.steps = n_steps;
  out.stats.meas_pos_rmse = std::sqrt(meas_sq_sum / (3.0 * n_rows));
  out.stats.est_pos_rmse = std::sqrt(est_sq_sum / (3.0 * n_rows));
  out.stats.min_P_eig = min_eig;
  out.stats.max_P_asym = max_asym;
  out.stats.max_abs_phi = max_phi;
  out.stats.max_abs_theta = max_theta;
  out.stats.tilt_envelope_exceeded = envelope_hit;
  return out;
}

Metrics compute_metrics(const TimeSeriesLog& log, double t0, double t1,
                        const QuadParams& p) {
  constexpr double kSlack = 1e-9;
  Metrics m;
  double sx = 0.0, sy = 0.0, sz = 0.0, s_est = 0.0, s_thrust = 0.0,
         s_surf = 0.0;
  int n = 0;
  const LogRow* last = nullptr;
  for (const LogRow& r : log.rows) {
    if (r.t < t0 - kSlack || r.t > t1 + kSlack) continue;
    ++n;
    const double ex = r.truth.x - r.x_r;
    const double ey = r.truth.y - r.y_r;
    const double ez = r.truth.z - r.z_r;
    sx += ex * ex;
    sy += ey * ey;
    sz += ez * ez;
    m.max_abs_x = std::max(m.max_abs_x, std::abs(ex));
    m.max_abs_y = std::max(m.max_abs_y, std::abs(ey));
    m.max_abs_z = std::max(m.max_abs_z, std::abs(ez));
    const double gx = r.est.x - r.truth.x;
    const double gy = r.est.y - r.truth.y;
    const double gz = r.est.z - r.truth.z;
    s_est += gx * gx + gy * gy + gz * gz;
    s_thrust += std::abs(r.u.Fz - p.m * p.g);
    s_surf += r.s_top * r.s_top;
    last = &r;
  }
  if (n == 0) {
    throw EmptyWindow("compute_metrics: no log rows in the window");
  }
  m.rmse_x = std::sqrt(sx / n);
  m.rmse_y = std::sqrt(sy / n);
  m.rmse_z = std::sqrt(sz / n);
  m.est_rmse = std::sqrt(s_est / (3.0 * n));
  m.mean_thrust_offset = s_thrust / n;
  m.surface_rms = std::sqrt(s_surf / n);
  m.final_err_x = last->truth.x - last->x_r;
  m.final_err_y = last->truth.y - last->y_r;
  m.final_err_z = last->truth.z - last->z_r;
  m.final_err_psi = last->truth.psi - last->psi_r;
  return m;
}

}  // namespace quadsim
