#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sasaki/config.hpp"

namespace sasaki {

struct CheckRow {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

/// Machine-readable verification report. The JSON document is the contract;
/// the table printed to standard output renders the same data. Reports are
/// deterministic for a fixed (config, seed); the timestamp lives in its own
/// field so golden comparisons can drop it.
struct ResidualReport {
  std::string schema_version = "1.0";
  std::string tool_version;
  std::string command;
  nlohmann::json config_echo;

  std::string deta_convention;  // "half" or "nohalf"
  std::string k_branch;
  double measured_k = 0.0;
  double l_used = 0.0;

  std::vector<CheckRow> checks;
  int rejected_samples = 0;
  int total_samples = 0;
  std::vector<std::string> verdicts;
  nlohmann::json extra;  // adjudication details and measured constants

  void add(CheckRow row) { checks.push_back(std::move(row)); }
  void add(const std::string& name, int samples, double max_r, double mean_r, double tol,
           const std::string& note = "") {
    checks.push_back({name, samples, max_r, mean_r, tol, max_r <= tol, note});
  }

  bool all_pass() const;
  double rejection_rate() const;

  /// 0 all pass, 1 check failure, 3 rejection rate above 5%.
  int exit_code() const;

  nlohmann::json to_json(bool with_timestamp = true) const;
  void print_table(std::ostream& os) const;
};

/// Accumulates per-sample residuals into a CheckRow.
struct ResidualAccum {
  double max_r = 0.0;
  double sum = 0.0;
  int n = 0;
  void add(double r) {
    max_r = std::max(max_r, r);
    sum += r;
    ++n;
  }
  CheckRow row(const std::string& name, double tol, const std::string& note = "") const {
    return {name, n, max_r, n ? sum / n : 0.0, tol, max_r <= tol, note};
  }
};

}  // namespace sasaki
