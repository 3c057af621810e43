#include "sasaki/config.hpp"

#include <fstream>

namespace sasaki {

namespace {

const std::vector<std::string> kTopKeys = {"m",        "f",        "level",    "samples",
                                           "seed",     "tolerances", "strategy", "orientation",
                                           "k_branch", "json_out"};
const std::vector<std::string> kTolKeys = {"geometry", "first_order", "second_order"};

bool known(const std::vector<std::string>& keys, const std::string& k) {
  for (const auto& s : keys)
    if (s == k) return true;
  return false;
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  std::vector<std::string> issues;
  RunConfig c;

  if (!j.is_object()) throw ConfigError({"top-level document must be a JSON object"});

  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known(kTopKeys, it.key())) issues.push_back("unknown key '" + it.key() + "'");

  auto get_num = [&](const char* key, double lo, double hi, double def, bool* present = nullptr) {
    if (!j.contains(key)) {
      if (present) *present = false;
      return def;
    }
    if (present) *present = true;
    if (!j[key].is_number()) {
      issues.push_back(std::string(key) + ": expected a number");
      return def;
    }
    double v = j[key].get<double>();
    if (v < lo || v > hi)
      issues.push_back(std::string(key) + ": value " + std::to_string(v) + " out of range");
    return v;
  };

  if (j.contains("m")) {
    if (!j["m"].is_number_integer())
      issues.push_back("m: expected an integer");
    else {
      c.m = j["m"].get<int>();
      if (c.m < 1) issues.push_back("m: must be >= 1");
    }
  } else {
    issues.push_back("m: required");
  }

  if (j.contains("f")) {
    if (!j["f"].is_string())
      issues.push_back("f: expected a string");
    else {
      c.f = j["f"].get<std::string>();
      c.has_f = true;
    }
  }

  c.level = get_num("level", -1e12, 1e12, 0.0);

  if (j.contains("samples")) {
    if (!j["samples"].is_number_integer())
      issues.push_back("samples: expected an integer");
    else {
      c.samples = j["samples"].get<int>();
      if (c.samples < 1 || c.samples > 100000) issues.push_back("samples: out of range [1,100000]");
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer())
      issues.push_back("seed: expected an integer");
    else
      c.seed = j["seed"].get<std::uint64_t>();
  }

  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) {
      issues.push_back("tolerances: expected an object");
    } else {
      for (auto it = t.begin(); it != t.end(); ++it)
        if (!known(kTolKeys, it.key()))
          issues.push_back("tolerances: unknown key '" + it.key() + "'");
      auto get_tol = [&](const char* key, double def) {
        if (!t.contains(key)) return def;
        if (!t[key].is_number() || t[key].get<double>() <= 0) {
          issues.push_back(std::string("tolerances.") + key + ": expected a positive number");
          return def;
        }
        return t[key].get<double>();
      };
      c.tolerances.geometry = get_tol("geometry", c.tolerances.geometry);
      c.tolerances.first_order = get_tol("first_order", c.tolerances.first_order);
      c.tolerances.second_order = get_tol("second_order", c.tolerances.second_order);
    }
  }

  if (j.contains("strategy")) {
    if (!j["strategy"].is_string())
      issues.push_back("strategy: expected a string");
    else {
      c.strategy = j["strategy"].get<std::string>();
      if (c.strategy != "jet" && c.strategy != "fd")
        issues.push_back("strategy: must be 'jet' or 'fd'");
    }
  }

  c.orientation = get_num("orientation", -1.0, 1.0, 1.0);
  if (c.orientation != 1.0 && c.orientation != -1.0)
    if (j.contains("orientation")) issues.push_back("orientation: must be +1 or -1");

  if (j.contains("k_branch")) {
    if (!j["k_branch"].is_string())
      issues.push_back("k_branch: expected a string");
    else {
      c.k_branch = j["k_branch"].get<std::string>();
      if (c.k_branch != "lemma" && c.k_branch != "alt" && c.k_branch != "auto")
        issues.push_back("k_branch: must be 'lemma', 'alt' or 'auto'");
    }
  }

  if (j.contains("json_out")) {
    if (!j["json_out"].is_string())
      issues.push_back("json_out: expected a string");
    else
      c.json_out = j["json_out"].get<std::string>();
  }

  if (!issues.empty()) throw ConfigError(issues);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError({std::string("JSON parse failure: ") + e.what()});
  }
  return config_from_json(j);
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["m"] = c.m;
  if (c.has_f) j["f"] = c.f;
  j["level"] = c.level;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["tolerances"] = {{"geometry", c.tolerances.geometry},
                     {"first_order", c.tolerances.first_order},
                     {"second_order", c.tolerances.second_order}};
  j["strategy"] = c.strategy;
  j["orientation"] = c.orientation;
  j["k_branch"] = c.k_branch;
  return j;
}

}  // namespace sasaki
