#include "iim/config.hpp"

#include <fstream>
#include <sstream>

namespace iim {

namespace {
std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + it->second + "' as a number");
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + it->second + "' as an integer");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> Config::get_list(const std::string& key) const {
  std::vector<double> out;
  auto it = values_.find(key);
  if (it == values_.end()) return out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': cannot parse list element '" + item + "'");
    }
  }
  return out;
}

std::shared_ptr<InterfaceGeometry> build_geometry(const Config& cfg) {
  const std::string kind = cfg.get("geometry.kind");
  if (kind.empty()) return nullptr;
  const Vec2 center{cfg.get_double("geometry.center_x", 0.0),
                    cfg.get_double("geometry.center_y", 0.0)};
  MotionLaw motion;
  const std::string law = cfg.get("geometry.motion", "static");
  if (law == "static") {
    motion = MotionLaw::statics();
  } else if (law == "translate") {
    motion = MotionLaw::translate({cfg.get_double("geometry.velocity_x", 0.0),
                                   cfg.get_double("geometry.velocity_y", 0.0)});
  } else if (law == "rotate") {
    motion = MotionLaw::rotate(cfg.get_double("geometry.omega", 0.0));
  } else {
    throw ConfigError("geometry.motion: unknown law '" + law + "'");
  }

  if (kind == "circle")
    return std::make_shared<CircleGeometry>(center, cfg.get_double("geometry.radius", 1.0),
                                            motion);
  if (kind == "ellipse")
    return std::make_shared<EllipseGeometry>(center, cfg.get_double("geometry.a", 1.0),
                                             cfg.get_double("geometry.b", 0.6), motion);
  if (kind == "spline") {
    const auto flat = cfg.get_list("geometry.spline_points");
    if (flat.size() < 8 || flat.size() % 2 != 0)
      throw ConfigError("geometry.spline_points: need at least 4 x,y pairs");
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i + 1 < flat.size(); i += 2)
      pts.push_back(center + Vec2{flat[i], flat[i + 1]});
    return std::make_shared<SplineGeometry>(std::move(pts), motion);
  }
  throw ConfigError("geometry.kind: unknown kind '" + kind + "'");
}

std::shared_ptr<const ForceDensity> build_force(const Config& cfg,
                                                std::shared_ptr<InterfaceGeometry> geometry) {
  if (!geometry) return nullptr;
  ForceProfileParams p;
  p.normal_amp = cfg.get_double("force.normal_amp", 0.0);
  p.normal_cos_amp = cfg.get_double("force.normal_cos_amp", 0.0);
  p.normal_mode = cfg.get_int("force.normal_mode", 1);
  p.tangential_amp = cfg.get_double("force.tangential_amp", 0.0);
  p.tangential_mode = cfg.get_int("force.tangential_mode", 1);
  p.tangential_const_amp = cfg.get_double("force.tangential_const_amp", 0.0);
  return std::make_shared<NamedProfileForce>(std::move(geometry), p);
}

SolverConfig build_solver_config(const Config& cfg) {
  SolverConfig sc;
  sc.spec = GridSpec(cfg.get_int("n", 32), cfg.get_double("half_period", std::numbers::pi));
  sc.lambda = cfg.get_double("lambda", 0.5);
  sc.T = cfg.get_double("T", 0.25);
  sc.enable_C1 = cfg.get_bool("enable_c1", true);
  sc.enable_C7 = cfg.get_bool("enable_c7", true);
  sc.use_body_force = cfg.get_bool("body_force", true);

  const std::string mode = cfg.get("jump_mode", "analytic");
  if (mode == "analytic")
    sc.jump_mode = JumpMode::analytic;
  else if (mode == "derived")
    sc.jump_mode = JumpMode::derived;
  else
    throw ConfigError("jump_mode: expected 'analytic' or 'derived', got '" + mode + "'");

  const std::string case_name = cfg.get("case");
  if (!case_name.empty()) {
    sc.mcase = case_by_name(case_name);
    return sc;
  }
  sc.geometry = build_geometry(cfg);
  sc.force = build_force(cfg, sc.geometry);
  if (sc.geometry && sc.jump_mode == JumpMode::analytic)
    throw ConfigError("explicit geometry runs need jump_mode = derived");
  return sc;
}

}  // namespace iim
