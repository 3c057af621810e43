#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace sasaki {

struct ConfigError : std::runtime_error {
  std::vector<std::string> issues;
  explicit ConfigError(std::vector<std::string> list)
      : std::runtime_error(join(list)), issues(std::move(list)) {}
  static std::string join(const std::vector<std::string>& list) {
    std::string s = "configuration invalid:";
    for (const auto& e : list) s += "\n  - " + e;
    return s;
  }
};

struct Tolerances {
  double geometry = 1e-7;
  double first_order = 1e-6;
  double second_order = 1e-4;
};

/// Run configuration, loaded from a JSON document. Unknown keys are hard
/// errors; validation problems are collected and reported all at once with
/// field paths.
struct RunConfig {
  int m = 1;
  std::string f;  // level-set expression; required by surface-bound commands
  bool has_f = false;
  double level = 0.0;
  int samples = 50;
  std::uint64_t seed = 42;
  Tolerances tolerances;
  std::string strategy = "jet";  // "jet" or "fd"
  double orientation = 1.0;
  std::string k_branch = "auto";  // "lemma", "alt" or "auto"
  std::string json_out;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& c);

}  // namespace sasaki
