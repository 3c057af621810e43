#include "sasaki/report.hpp"

#include <chrono>
#include <cstdio>

namespace sasaki {

bool ResidualReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

double ResidualReport::rejection_rate() const {
  int total = rejected_samples + total_samples;
  return total > 0 ? double(rejected_samples) / double(total) : 0.0;
}

int ResidualReport::exit_code() const {
  if (rejection_rate() > 0.05) return 3;
  return all_pass() ? 0 : 1;
}

nlohmann::json ResidualReport::to_json(bool with_timestamp) const {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["tool_version"] = tool_version;
  j["command"] = command;
  if (with_timestamp) {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    j["generated_at"] = buf;
  }
  j["config"] = config_echo;
  j["conventions"] = {{"deta", deta_convention},
                      {"k_branch", k_branch},
                      {"measured_k", measured_k},
                      {"l_used", l_used}};
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"samples", c.samples},
                           {"max_residual", c.max_residual},
                           {"mean_residual", c.mean_residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"note", c.note}});
  }
  j["rejected_samples"] = rejected_samples;
  j["total_samples"] = total_samples;
  j["verdicts"] = verdicts;
  if (!extra.is_null()) j["extra"] = extra;
  j["exit_code"] = exit_code();
  return j;
}

void ResidualReport::print_table(std::ostream& os) const {
  char line[256];
  os << "== " << command << " ==\n";
  os << "conventions: deta=" << deta_convention << " k_branch=" << k_branch
     << " measured_k=" << measured_k << " l=" << l_used << "\n";
  snprintf(line, sizeof(line), "%-44s %7s %12s %12s %10s %s\n", "check", "samples", "max",
           "mean", "tol", "status");
  os << line;
  for (const auto& c : checks) {
    snprintf(line, sizeof(line), "%-44s %7d %12.3e %12.3e %10.1e %s%s%s\n", c.name.c_str(),
             c.samples, c.max_residual, c.mean_residual, c.tolerance,
             c.pass ? "PASS" : "FAIL", c.note.empty() ? "" : "  # ", c.note.c_str());
    os << line;
  }
  if (rejected_samples > 0 || total_samples > 0)
    os << "samples: " << total_samples << " accepted, " << rejected_samples << " rejected\n";
  for (const auto& v : verdicts) os << "verdict: " << v << "\n";
  os << (all_pass() ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
}

}  // namespace sasaki
