#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ospchain/report.hpp"

namespace ospchain::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// One batch run. Field names match the flags and the --config JSON keys.
struct RunConfig {
  std::string command;
  int M = 1;
  int n = 1;
  int L = 2;
  std::optional<Json> boundary;  // boundary spec without M and n
  bool open = false;
  int samples = 5;
  std::uint64_t seed = 1;
  long bound = 100;
  bool exact = true;
  double tolerance = 1e-10;
  std::optional<std::string> output;
  std::vector<int> occupancies;
  int starts = 64;

  /// Normalized form recorded in the report.
  Json to_json() const;
  /// Reads the --config file form; unknown keys are rejected.
  static RunConfig from_json(const Json& j);
};

const std::vector<std::string>& commands();

struct RunResult {
  int exit_code = kExitPass;
  Json report;
};

/// Executes the command. Never throws: invalid configurations give kExitUsage
/// and a diagnostic report.
RunResult run(const RunConfig& config);

/// Argument parsing plus run plus report writing. Returns the process exit code.
int main_entry(int argc, char** argv);

/// Report path: --output, else $OSPCHAIN_OUTPUT_DIR (default ".") / ospchain-<command>.json.
std::string report_path(const RunConfig& config);

std::string tool_version();

}  // namespace ospchain::cli
