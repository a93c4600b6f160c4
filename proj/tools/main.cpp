#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "quadsim/config.hpp"
#include "quadsim/csv.hpp"
#include "quadsim/dynamics.hpp"
#include "quadsim/errors.hpp"
#include "quadsim/linearize.hpp"
#include "quadsim/position.hpp"
#include "quadsim/sim.hpp"

namespace {

using namespace quadsim;

// Flag values the user gave explicitly; applied on top of config-file values.
struct CommonFlags {
  int scenario = 1;
  std::string controller = "ahsmc";
  double ts = 0.01;
  double duration = -1.0;
  std::string noise = "on";
  std::uint64_t seed = 42;
  std::string ekf_mode = "standard";
  std::string config_path;
  std::string out = "run.csv";
};

// Adds the shared flags to a subcommand and returns the option handles the
// precedence logic needs (config file < explicit flags).
struct CommonOptions {
  CLI::Option* scenario = nullptr;
  CLI::Option* controller = nullptr;
  CLI::Option* ts = nullptr;
  CLI::Option* duration = nullptr;
  CLI::Option* noise = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* ekf_mode = nullptr;
  CLI::Option* out = nullptr;
};

CommonOptions add_common_flags(CLI::App* cmd, CommonFlags& f,
                               bool with_single_run_flags) {
  CommonOptions o;
  cmd->add_option("--config", f.config_path,
                  "Configuration file applied before explicit flags");
  if (with_single_run_flags) {
    o.scenario = cmd->add_option("--scenario", f.scenario, "Flight profile")
                     ->check(CLI::Range(1, 3));
    o.controller =
        cmd->add_option("--controller", f.controller, "Position controller")
            ->check(CLI::IsMember(
                {"ahsmc", "ihsmc", "chsmc", "pid", "sosmc"}));
    o.seed = cmd->add_option("--seed", f.seed, "RNG seed");
    o.out = cmd->add_option("--out", f.out, "Output CSV path");
  }
  o.ts = cmd->add_option("--ts", f.ts, "Step size [s]")
             ->check(CLI::PositiveNumber);
  o.duration = cmd->add_option(
      "--duration", f.duration,
      "Run length [s]; omit to use the scenario default");
  o.noise = cmd->add_option("--noise", f.noise, "Noise injection")
                ->check(CLI::IsMember({"on", "off"}));
  o.ekf_mode = cmd->add_option("--ekf-mode", f.ekf_mode, "Filter propagation")
                   ->check(CLI::IsMember({"standard", "paper-literal"}));
  return o;
}

// defaults < config file < explicit flags.
RunConfig build_config(const CommonFlags& f, const CommonOptions& o) {
  RunConfig cfg;
  if (!f.config_path.empty()) {
    apply_config(parse_config_file(f.config_path), cfg);
  }
  if (o.scenario && o.scenario->count() > 0) cfg.scenario = f.scenario;
  if (o.controller && o.controller->count() > 0) {
    cfg.controller = controller_from_name(f.controller);
  }
  if (o.ts->count() > 0) cfg.ts = f.ts;
  if (o.duration->count() > 0) cfg.duration = f.duration;
  if (o.noise->count() > 0) cfg.noise = f.noise == "on";
  if (o.seed && o.seed->count() > 0) cfg.seed = f.seed;
  if (o.ekf_mode->count() > 0) {
    cfg.ekf_mode = f.ekf_mode == "standard" ? EkfMode::kStandard
                                            : EkfMode::kEulerLiteral;
  }
  if (o.out && o.out->count() > 0) cfg.out_path = f.out;
  return cfg;
}

void print_metrics(const RunConfig& cfg, const RunResult& res) {
  const double t_end = res.log.rows.back().t;
  const Metrics m = compute_metrics(res.log, 0.0, t_end, cfg.params);
  std::printf("controller %s  scenario %d  steps %d  ts %g  seed %" PRIu64
              "  noise %s\n",
              controller_name(cfg.controller), cfg.scenario, res.stats.steps,
              cfg.ts, cfg.seed, cfg.noise ? "on" : "off");
  std::printf("%-6s %12s %12s\n", "axis", "rmse [m]", "max|err| [m]");
  std::printf("%-6s %12.6f %12.6f\n", "x", m.rmse_x, m.max_abs_x);
  std::printf("%-6s %12.6f %12.6f\n", "y", m.rmse_y, m.max_abs_y);
  std::printf("%-6s %12.6f %12.6f\n", "z", m.rmse_z, m.max_abs_z);
  std::printf("estimate rmse %.6g m  (measurement rmse %.6g m)\n",
              res.stats.est_pos_rmse, res.stats.meas_pos_rmse);
  std::printf("final err  x %+.5f  y %+.5f  z %+.5f  psi %+.5f\n",
              m.final_err_x, m.final_err_y, m.final_err_z, m.final_err_psi);
}

int cmd_run(const CommonFlags& f, const CommonOptions& o) {
  const RunConfig cfg = build_config(f, o);
  try {
    const RunResult res = run_closed_loop(cfg);
    write_csv(res.log, cfg.out_path);
    std::printf("wrote %s (%zu rows)\n", cfg.out_path.c_str(),
                res.log.rows.size());
    print_metrics(cfg, res);
    return 0;
  } catch (const DivergedRun& e) {
    std::fprintf(stderr, "diverged: %s\n", e.what());
    return 1;
  }
}

struct SweepCell {
  Controller controller;
  int scenario;
  std::uint64_t seed;
};

struct SweepOutcome {
  SweepCell cell;
  bool diverged = false;
  Metrics metrics;
  RunStats stats;
};

int cmd_sweep(const CommonFlags& f, const CommonOptions& o,
              const std::vector<std::string>& controllers,
              const std::vector<int>& scenarios,
              const std::vector<std::uint64_t>& seeds,
              const std::string& out_dir, int jobs) {
  const RunConfig base = build_config(f, o);
  std::vector<SweepCell> cells;
  for (const std::string& c : controllers) {
    for (int s : scenarios) {
      for (std::uint64_t seed : seeds) {
        cells.push_back(SweepCell{controller_from_name(c), s, seed});
      }
    }
  }
  std::filesystem::create_directories(out_dir);

  std::vector<SweepOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex print_mu;
  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const SweepCell& cell = cells[i];
      RunConfig cfg = base;
      cfg.controller = cell.controller;
      cfg.scenario = cell.scenario;
      cfg.seed = cell.seed;
      char name[128];
      std::snprintf(name, sizeof name, "%s_s%d_seed%" PRIu64 ".csv",
                    controller_name(cell.controller), cell.scenario,
                    cell.seed);
      const std::string path = out_dir + "/" + name;
      SweepOutcome& out = outcomes[i];
      out.cell = cell;
      try {
        const RunResult res = run_closed_loop(cfg);
        write_csv(res.log, path);
        out.metrics =
            compute_metrics(res.log, 0.0, res.log.rows.back().t, cfg.params);
        out.stats = res.stats;
        std::lock_guard<std::mutex> lk(print_mu);
        std::printf("%-28s rmse x %.4f  y %.4f  z %.4f\n", name,
                    out.metrics.rmse_x, out.metrics.rmse_y,
                    out.metrics.rmse_z);
      } catch (const DivergedRun& e) {
        out.diverged = true;
        std::lock_guard<std::mutex> lk(print_mu);
        std::printf("%-28s DIVERGED at step %d (t=%.2f s)\n", name, e.step,
                    e.t);
      }
    }
  };
  const int n_workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  const std::string summary_path = out_dir + "/summary.csv";
  std::FILE* sf = std::fopen(summary_path.c_str(), "wb");
  if (sf == nullptr) {
    throw IoError("sweep: cannot open " + summary_path);
  }
  std::fprintf(sf,
               "controller,scenario,seed,status,rmse_x,rmse_y,rmse_z,"
               "max_x,max_y,max_z,est_rmse,meas_rmse,surface_rms,"
               "final_x,final_y,final_z,final_psi\n");
  bool any_diverged = false;
  for (const SweepOutcome& out : outcomes) {
    any_diverged = any_diverged || out.diverged;
    if (out.diverged) {
      std::fprintf(sf, "%s,%d,%" PRIu64 ",diverged,,,,,,,,,,,,,\n",
                   controller_name(out.cell.controller), out.cell.scenario,
                   out.cell.seed);
      continue;
    }
    const Metrics& m = out.metrics;
    std::fprintf(sf,
                 "%s,%d,%" PRIu64
                 ",ok,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                 "%.17g,%.17g,%.17g,%.17g\n",
                 controller_name(out.cell.controller), out.cell.scenario,
                 out.cell.seed, m.rmse_x, m.rmse_y, m.rmse_z, m.max_abs_x,
                 m.max_abs_y, m.max_abs_z, out.stats.est_pos_rmse,
                 out.stats.meas_pos_rmse, m.surface_rms, m.final_err_x,
                 m.final_err_y, m.final_err_z, m.final_err_psi);
  }
  if (std::fclose(sf) != 0) {
    throw IoError("sweep: write failed for " + summary_path);
  }
  std::printf("wrote %s (%zu cells)\n", summary_path.c_str(), cells.size());
  return any_diverged ? 1 : 0;
}

// ---- fast invariant suite (`check` subcommand) ----

Vec12 random_bounded_state(Rng& rng) {
  Vec12 v;
  const auto span = [&rng](double lo, double hi) {
    return lo + (hi - lo) * rng.uniform();
  };
  for (int i = 0; i < 3; ++i) v(i) = span(-10.0, 10.0);       // positions
  for (int i = 3; i < 6; ++i) v(i) = span(-0.5, 0.5);         // angles
  for (int i = 6; i < 9; ++i) v(i) = span(-5.0, 5.0);         // velocities
  for (int i = 9; i < 12; ++i) v(i) = span(-2.0, 2.0);        // rates
  return v;
}

Reference random_reference(Rng& rng) {
  const auto span = [&rng](double lo, double hi) {
    return lo + (hi - lo) * rng.uniform();
  };
  Reference r;
  r.x_r = span(-5.0, 5.0);
  r.dx_r = span(-1.0, 1.0);
  r.ddx_r = span(-1.0, 1.0);
  r.y_r = span(-5.0, 5.0);
  r.dy_r = span(-1.0, 1.0);
  r.ddy_r = span(-1.0, 1.0);
  r.z_r = span(-5.0, 5.0);
  r.dz_r = span(-1.0, 1.0);
  r.ddz_r = span(-1.0, 1.0);
  r.psi_r = span(-0.5, 0.5);
  r.dpsi_r = span(-0.5, 0.5);
  r.ddpsi_r = span(-0.5, 0.5);
  return r;
}

// Central finite differences of the plant derivative with the thrust
// projection frozen at the operating point (the input-coupled tilt terms
// live in B's operating point, not in A).
bool check_jacobian_fd(int n_states, double tol, double* worst) {
  const QuadParams p;
  Rng rng(12345);
  const double h = 1e-6;
  double max_rel = 0.0;
  for (int n = 0; n < n_states; ++n) {
    const Vec12 x0 = random_bounded_state(rng);
    ControlInput u;
    u.Fz = 15.0 + 10.0 * rng.uniform();
    u.C1 = 0.02 * (rng.uniform() - 0.5);
    u.C2 = 0.02 * (rng.uniform() - 0.5);
    u.C3 = 0.02 * (rng.uniform() - 0.5);
    const QuadState s0 = QuadState::from_vector(x0);
    const Mat12x4 B0 = jacobian_B(s0, p);
    const auto frozen = [&](const Vec12& xv) {
      const QuadState s = QuadState::from_vector(xv);
      Vec12 d = derivative(s, u, p);
      d -= jacobian_B(s, p).col(0) * u.Fz;
      d += B0.col(0) * u.Fz;
      return d;
    };
    const Mat12 A = jacobian_A(s0, p);
    for (int j = 0; j < 12; ++j) {
      Vec12 hi = x0, lo = x0;
      hi(j) += h;
      lo(j) -= h;
      const Vec12 col = (frozen(hi) - frozen(lo)) / (2.0 * h);
      for (int i = 0; i < 12; ++i) {
        const double rel =
            std::abs(col(i) - A(i, j)) / std::max(1.0, std::abs(A(i, j)));
        max_rel = std::max(max_rel, rel);
      }
    }
    const Mat12x4 B = jacobian_B(s0, p);
    for (int j = 0; j < 4; ++j) {
      ControlInput uh = u, ul = u;
      double* fh[4] = {&uh.Fz, &uh.C1, &uh.C2, &uh.C3};
      double* fl[4] = {&ul.Fz, &ul.C1, &ul.C2, &ul.C3};
      *fh[j] += h;
      *fl[j] -= h;
      const Vec12 col =
          (derivative(s0, uh, p) - derivative(s0, ul, p)) / (2.0 * h);
      for (int i = 0; i < 12; ++i) {
        const double rel =
            std::abs(col(i) - B(i, j)) / std::max(1.0, std::abs(B(i, j)));
        max_rel = std::max(max_rel, rel);
      }
    }
  }
  *worst = max_rel;
  return max_rel < tol;
}

// Executable reaching laws: the top-surface derivative under the commanded
// thrust, evaluated in the controller's own model, must equal
// -K*S - eta*sat(S); the attitude surfaces must satisfy ds = -s - K*sat(s).
bool check_reaching(int n_states, double tol, double* worst) {
  const QuadParams p;
  const AttitudeGains ag;
  Rng rng(54321);
  double max_err = 0.0;
  for (int n = 0; n < n_states; ++n) {
    const QuadState s = QuadState::from_vector(random_bounded_state(rng));
    const Reference ref = random_reference(rng);
    const double e2 = s.vx - ref.dx_r;
    const double e4 = s.vy - ref.dy_r;
    const double e6 = s.vz - ref.dz_r;
    {
      const HsmcGains g = HsmcGains::aggregated_defaults();
      const ThrustCommand tc = ahsmc_thrust(s, ref, g, p);
      const FbTerms t = fb_terms(s, p, g.b_floor);
      const double ds1 = g.c1 * e2 + t.f_x + t.b_x * tc.Fz - ref.ddx_r;
      const double ds2 = g.c2 * e4 + t.f_y + t.b_y * tc.Fz - ref.ddy_r;
      const double ds3 = g.c3 * e6 + t.f_z + t.b_z * tc.Fz - ref.ddz_r;
      const double dS3 = g.lambda2 * (g.lambda1 * ds1 + ds2) + ds3;
      const double S3 = tc.surfaces.top;
      max_err = std::max(
          max_err, std::abs(dS3 + g.K_reach * S3 + g.eta * sat(S3)));
    }
    {
      const HsmcGains g = HsmcGains::incremental_defaults();
      const ThrustCommand tc = ihsmc_thrust(s, ref, g, p);
      const FbTerms t = fb_terms(s, p, g.b_floor);
      const double ds5 = g.c5 * (t.f_z + t.b_z * tc.Fz - ref.ddz_r) +
                         g.c4 * e6 +
                         g.c3 * (t.f_y + t.b_y * tc.Fz - ref.ddy_r) +
                         g.c2 * e4 +
                         g.c1 * (t.f_x + t.b_x * tc.Fz - ref.ddx_r) + e2;
      const double s5 = tc.surfaces.top;
      max_err = std::max(
          max_err, std::abs(ds5 + g.K_reach * s5 + g.eta * sat(s5)));
    }
    {
      const HsmcGains g = HsmcGains::combining_defaults();
      const ThrustCommand tc = chsmc_thrust(s, ref, g, p);
      const FbTerms t = fb_terms(s, p, g.b_floor);
      const double ds = g.c1 * e2 + g.c2 * e4 + g.c3 * e6;
      const double dS = g.alpha * ds +
                        g.c1 * (t.f_x + t.b_x * tc.Fz - ref.ddx_r) +
                        g.c2 * (t.f_y + t.b_y * tc.Fz - ref.ddy_r) +
                        g.c3 * (t.f_z + t.b_z * tc.Fz - ref.ddz_r);
      const double S = tc.surfaces.top;
      max_err =
          std::max(max_err, std::abs(dS + g.K_reach * S + g.eta * sat(S)));
    }
    {
      AttitudeCommand cmd;
      cmd.phi = {0.4 * (rng.uniform() - 0.5), rng.uniform() - 0.5,
                 rng.uniform() - 0.5};
      cmd.theta = {0.4 * (rng.uniform() - 0.5), rng.uniform() - 0.5,
                   rng.uniform() - 0.5};
      cmd.psi = {ref.psi_r, ref.dpsi_r, ref.ddpsi_r};
      const BodyTorques tq = attitude_torques(s, cmd, p, ag);
      const double f_phi = s.q_rate * s.r_rate * (p.Iyy - p.Izz) / p.Ixx;
      const double f_theta = s.p_rate * s.r_rate * (p.Izz - p.Ixx) / p.Iyy;
      const double f_psi = s.p_rate * s.q_rate * (p.Ixx - p.Iyy) / p.Izz;
      const double s_phi =
          ag.c_phi * (s.phi - cmd.phi.r) + (s.p_rate - cmd.phi.dr);
      const double s_theta =
          ag.c_theta * (s.theta - cmd.theta.r) + (s.q_rate - cmd.theta.dr);
      const double s_psi =
          ag.c_psi * (s.psi - cmd.psi.r) + (s.r_rate - cmd.psi.dr);
      const double ds_phi = ag.c_phi * (s.p_rate - cmd.phi.dr) + f_phi +
                            tq.C1 / p.Ixx - cmd.phi.ddr;
      const double ds_theta = ag.c_theta * (s.q_rate - cmd.theta.dr) +
                              f_theta + tq.C2 / p.Iyy - cmd.theta.ddr;
      const double ds_psi = ag.c_psi * (s.r_rate - cmd.psi.dr) + f_psi +
                            tq.C3 / p.Izz - cmd.psi.ddr;
      max_err = std::max(
          max_err, std::abs(ds_phi + s_phi + ag.K_phi * sat(s_phi)));
      max_err = std::max(
          max_err, std::abs(ds_theta + s_theta + ag.K_theta * sat(s_theta)));
      max_err = std::max(
          max_err, std::abs(ds_psi + s_psi + ag.K_psi * sat(s_psi)));
    }
  }
  *worst = max_err;
  return max_err < tol;
}

bool check_sat_table(double* worst) {
  const double in[7] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  const double want[7] = {-1.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.0};
  double max_err = 0.0;
  for (int i = 0; i < 7; ++i) {
    max_err = std::max(max_err, std::abs(sat(in[i]) - want[i]));
  }
  *worst = max_err;
  return max_err == 0.0;
}

bool check_mix_roundtrip(int n_states, double tol, double* worst) {
  const QuadParams p;
  Rng rng(2468);
  double max_err = 0.0;
  for (int n = 0; n < n_states; ++n) {
    MotorSpeedsSq w;
    w.w1 = 1e6 * rng.uniform();
    w.w2 = 1e6 * rng.uniform();
    w.w3 = 1e6 * rng.uniform();
    w.w4 = 1e6 * rng.uniform();
    const MotorSpeedsSq back = unmix(mix(w, p), p);
    const double errs[4] = {
        std::abs(back.w1 - w.w1) / std::max(1.0, std::abs(w.w1)),
        std::abs(back.w2 - w.w2) / std::max(1.0, std::abs(w.w2)),
        std::abs(back.w3 - w.w3) / std::max(1.0, std::abs(w.w3)),
        std::abs(back.w4 - w.w4) / std::max(1.0, std::abs(w.w4))};
    for (double e : errs) max_err = std::max(max_err, e);
  }
  MotorSpeedsSq sym;
  sym.w1 = sym.w2 = sym.w3 = sym.w4 = 3.3e5;
  const ControlInput u = mix(sym, p);
  const bool zero_torques = u.C1 == 0.0 && u.C2 == 0.0 && u.C3 == 0.0;
  *worst = max_err;
  return max_err < tol && zero_torques;
}

int cmd_check() {
  struct Row {
    const char* name;
    bool pass;
    double worst;
    double tol;
  };
  std::vector<Row> rows;
  double worst = 0.0;
  bool ok = check_jacobian_fd(200, 1e-5, &worst);
  rows.push_back({"jacobian-fd", ok, worst, 1e-5});
  ok = check_reaching(200, 1e-9, &worst);
  rows.push_back({"reaching-identities", ok, worst, 1e-9});
  ok = check_sat_table(&worst);
  rows.push_back({"sat-table", ok, worst, 0.0});
  ok = check_mix_roundtrip(200, 1e-9, &worst);
  rows.push_back({"mix-roundtrip", ok, worst, 1e-9});
  bool all = true;
  for (const Row& r : rows) {
    all = all && r.pass;
    std::printf("check %-20s %s  (worst %.3g, tol %.3g)\n", r.name,
                r.pass ? "PASS" : "FAIL", r.worst, r.tol);
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Deterministic quadrotor flight simulator: nonlinear plant, EKF state "
      "estimation, hierarchical sliding-mode position control"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run_cmd =
      app.add_subcommand("run", "One closed-loop run; writes a CSV log");
  const CommonOptions run_opts = add_common_flags(run_cmd, run_flags, true);

  CommonFlags sweep_flags;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Grid of runs over controllers x scenarios x seeds");
  const CommonOptions sweep_opts =
      add_common_flags(sweep_cmd, sweep_flags, false);
  std::vector<std::string> controllers = {"ahsmc", "ihsmc", "chsmc", "pid",
                                          "sosmc"};
  std::vector<int> scenarios = {1, 2, 3};
  std::vector<std::uint64_t> seeds = {42};
  std::string out_dir = "sweep_out";
  int jobs = 1;
  sweep_cmd->add_option("--controllers", controllers, "Controllers to sweep")
      ->delimiter(',')
      ->check(CLI::IsMember({"ahsmc", "ihsmc", "chsmc", "pid", "sosmc"}));
  sweep_cmd->add_option("--scenarios", scenarios, "Scenarios to sweep")
      ->delimiter(',')
      ->check(CLI::Range(1, 3));
  sweep_cmd->add_option("--seeds", seeds, "Seeds to sweep")->delimiter(',');
  sweep_cmd->add_option("--out-dir", out_dir, "Directory for the CSV logs");
  sweep_cmd->add_option("--jobs", jobs, "Worker threads")
      ->check(CLI::PositiveNumber);

  CLI::App* check_cmd = app.add_subcommand(
      "check", "Fast invariant suite (Jacobians, reaching laws, mixer)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_flags, run_opts);
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_flags, sweep_opts, controllers, scenarios,
                       seeds, out_dir, jobs);
    }
    if (check_cmd->parsed()) return cmd_check();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const SimError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
