#include "quadsim/config.hpp"

#include <cstdlib>
#include <fstream>
#include <string>

#include "quadsim/errors.hpp"

namespace quadsim {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double d = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ConfigError("config key '" + key + "': '" + v +
                      "' is not a number");
  }
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const long d = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw ConfigError("config key '" + key + "': '" + v +
                      "' is not an integer");
  }
  return static_cast<int>(d);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const unsigned long long d = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0' || v.front() == '-') {
    throw ConfigError("config key '" + key + "': '" + v +
                      "' is not an unsigned integer");
  }
  return static_cast<std::uint64_t>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError("config key '" + key + "': '" + v +
                    "' is not a boolean (use on/off)");
}

EkfMode to_mode(const std::string& key, const std::string& v) {
  if (v == "standard") return EkfMode::kStandard;
  if (v == "paper-literal") return EkfMode::kEulerLiteral;
  throw ConfigError("config key '" + key + "': '" + v +
                    "' is not an EKF mode (standard or paper-literal)");
}

// Shared key set of the three hierarchical gain records; returns false when
// the key does not belong to the record so the caller can reject it.
bool apply_hsmc_key(HsmcGains& g, const std::string& sub,
                    const std::string& key, const std::string& v) {
  if (sub == "c1") g.c1 = to_double(key, v);
  else if (sub == "c2") g.c2 = to_double(key, v);
  else if (sub == "c3") g.c3 = to_double(key, v);
  else if (sub == "c4") g.c4 = to_double(key, v);
  else if (sub == "c5") g.c5 = to_double(key, v);
  else if (sub == "lambda1") g.lambda1 = to_double(key, v);
  else if (sub == "lambda2") g.lambda2 = to_double(key, v);
  else if (sub == "alpha") g.alpha = to_double(key, v);
  else if (sub == "K") g.K_reach = to_double(key, v);
  else if (sub == "eta") g.eta = to_double(key, v);
  else if (sub == "b_floor") g.b_floor = to_double(key, v);
  else return false;
  return true;
}

}  // namespace

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("parse_config_file: cannot open " + path);
  }
  ConfigFile out;
  std::string line;
  std::string section = "run";
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where =
        path + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("malformed section header at " + where);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("empty section name at " + where);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value' at " + where);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("empty key or value at " + where);
    }
    const std::string flat = section + "." + key;
    if (!out.values.emplace(flat, value).second) {
      throw ConfigError("duplicate config key '" + flat + "' at " + where);
    }
  }
  return out;
}

void apply_config(const ConfigFile& file, RunConfig& cfg) {
  for (const auto& [key, v] : file.values) {
    // Section names may themselves contain dots (controller.ahsmc), so the
    // key proper is everything after the last one.
    const auto dot = key.rfind('.');
    const std::string section =
        dot == std::string::npos ? key : key.substr(0, dot);
    const std::string sub =
        dot == std::string::npos ? key : key.substr(dot + 1);
    bool known = true;
    if (section == "run") {
      if (sub == "scenario") {
        cfg.scenario = to_int(key, v);
        if (cfg.scenario < 1 || cfg.scenario > 3) {
          throw ConfigError("config key '" + key + "': scenario must be 1-3");
        }
      } else if (sub == "controller") {
        cfg.controller = controller_from_name(v);
      } else if (sub == "ts") {
        cfg.ts = to_double(key, v);
      } else if (sub == "duration") {
        cfg.duration = to_double(key, v);
      } else if (sub == "noise") {
        cfg.noise = to_bool(key, v);
      } else if (sub == "seed") {
        cfg.seed = to_u64(key, v);
      } else if (sub == "ekf_mode") {
        cfg.ekf_mode = to_mode(key, v);
      } else if (sub == "out") {
        cfg.out_path = v;
      } else {
        known = false;
      }
    } else if (section == "params") {
      if (sub == "m") cfg.params.m = to_double(key, v);
      else if (sub == "g") cfg.params.g = to_double(key, v);
      else if (sub == "Ixx") cfg.params.Ixx = to_double(key, v);
      else if (sub == "Iyy") cfg.params.Iyy = to_double(key, v);
      else if (sub == "Izz") cfg.params.Izz = to_double(key, v);
      else if (sub == "Kdx") cfg.params.Kdx = to_double(key, v);
      else if (sub == "Kdy") cfg.params.Kdy = to_double(key, v);
      else if (sub == "Kdz") cfg.params.Kdz = to_double(key, v);
      else if (sub == "kt") cfg.params.kt = to_double(key, v);
      else if (sub == "kd") cfg.params.kd = to_double(key, v);
      else if (sub == "l") cfg.params.l = to_double(key, v);
      else known = false;
    } else if (section == "noise") {
      if (sub == "q") cfg.noise_cfg.q_scalar = to_double(key, v);
      else if (sub == "r") cfg.noise_cfg.r_scalar = to_double(key, v);
      else known = false;
    } else if (section == "controller.attitude") {
      AttitudeGains& g = cfg.attitude;
      if (sub == "kpx") g.kpx = to_double(key, v);
      else if (sub == "kdx") g.kdx = to_double(key, v);
      else if (sub == "kpy") g.kpy = to_double(key, v);
      else if (sub == "kdy") g.kdy = to_double(key, v);
      else if (sub == "c_phi") g.c_phi = to_double(key, v);
      else if (sub == "c_theta") g.c_theta = to_double(key, v);
      else if (sub == "c_psi") g.c_psi = to_double(key, v);
      else if (sub == "K_phi") g.K_phi = to_double(key, v);
      else if (sub == "K_theta") g.K_theta = to_double(key, v);
      else if (sub == "K_psi") g.K_psi = to_double(key, v);
      else known = false;
    } else if (section == "controller.ahsmc") {
      known = apply_hsmc_key(cfg.ahsmc, sub, key, v);
    } else if (section == "controller.ihsmc") {
      known = apply_hsmc_key(cfg.ihsmc, sub, key, v);
    } else if (section == "controller.chsmc") {
      known = apply_hsmc_key(cfg.chsmc, sub, key, v);
    } else if (section == "controller.pid") {
      PidGains& g = cfg.pid;
      if (sub == "kpz") g.kpz = to_double(key, v);
      else if (sub == "kdz") g.kdz = to_double(key, v);
      else if (sub == "kp_phi") g.kp_phi = to_double(key, v);
      else if (sub == "kd_phi") g.kd_phi = to_double(key, v);
      else if (sub == "kp_theta") g.kp_theta = to_double(key, v);
      else if (sub == "kd_theta") g.kd_theta = to_double(key, v);
      else if (sub == "kp_psi") g.kp_psi = to_double(key, v);
      else if (sub == "kd_psi") g.kd_psi = to_double(key, v);
      else known = false;
    } else if (section == "controller.sosmc") {
      SosmcGains& g = cfg.sosmc;
      if (sub == "c1") g.c1 = to_double(key, v);
      else if (sub == "c2") g.c2 = to_double(key, v);
      else if (sub == "c3") g.c3 = to_double(key, v);
      else if (sub == "c4") g.c4 = to_double(key, v);
      else if (sub == "c5") g.c5 = to_double(key, v);
      else if (sub == "c6") g.c6 = to_double(key, v);
      else if (sub == "c7") g.c7 = to_double(key, v);
      else if (sub == "c8") g.c8 = to_double(key, v);
      else if (sub == "eps1") g.eps1 = to_double(key, v);
      else if (sub == "eps2") g.eps2 = to_double(key, v);
      else if (sub == "eps3") g.eps3 = to_double(key, v);
      else if (sub == "eps4") g.eps4 = to_double(key, v);
      else if (sub == "eta1") g.eta1 = to_double(key, v);
      else if (sub == "eta2") g.eta2 = to_double(key, v);
      else if (sub == "eta3") g.eta3 = to_double(key, v);
      else if (sub == "eta4") g.eta4 = to_double(key, v);
      else if (sub == "c_z") g.c_z = to_double(key, v);
      else if (sub == "c_psi") g.c_psi = to_double(key, v);
      else if (sub == "hard_sign") g.hard_sign = to_bool(key, v);
      else known = false;
    } else {
      known = false;
    }
    if (!known || dot == std::string::npos) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

}  // namespace quadsim
