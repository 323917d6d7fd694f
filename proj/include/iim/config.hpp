#pragma once

#include <map>
#include <string>
#include <vector>

#include "iim/solver.hpp"

namespace iim {

/// key = value configuration text; '#' starts a comment. Keys are dotted
/// (geometry.kind, force.normal_amp, ...). Parse errors carry line context.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get(const std::string& key, const std::string& fallback = "") const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

/// Assembles a solver configuration from config keys: either a named
/// manufactured case (key "case") or an explicit geometry + force with
/// derived jumps.
SolverConfig build_solver_config(const Config& cfg);

std::shared_ptr<InterfaceGeometry> build_geometry(const Config& cfg);
std::shared_ptr<const ForceDensity> build_force(const Config& cfg,
                                                std::shared_ptr<InterfaceGeometry> geometry);

}  // namespace iim
