#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace alexandrov {

/// Malformed config or a reference to an unknown space, path, set or
/// operation. The CLI maps it to exit status 2.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CheckStatus {
  pass,
  fail,
  error,              // the operation threw
  diagnostic,         // nothing to assert
  expected_failure,   // a counterexample reproduced as designed
};

std::string to_string(CheckStatus status);

/// A convergence table written as <out>/<check id>/<file>. NaN cells are
/// written empty.
struct Table {
  std::string file;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct CheckResult {
  std::string id;
  std::string op;
  CheckStatus status = CheckStatus::diagnostic;
  std::string message;
  nlohmann::ordered_json payload;
  double value = 0.0;  // headline number of the check, NaN if none
  double error_bound = 0.0;
  double runtime_ms = 0.0;
  std::vector<Table> tables;
};

struct Report {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool ok() const;
  /// 0 when no check failed or errored, 1 otherwise.
  int exit_code() const;
  /// Everything except runtimes, so the output is reproducible.
  nlohmann::ordered_json to_json() const;
};

/// Operation ids accepted in a config's "checks" list.
const std::vector<std::string>& operation_ids();

Report run_scenario(const nlohmann::json& config, const std::filesystem::path& base_dir,
                    std::optional<std::uint64_t> seed_override = std::nullopt);
Report run_scenario(const std::filesystem::path& config_file,
                    std::optional<std::uint64_t> seed_override = std::nullopt);

/// Writes report.json, timings.json, summary.csv and one directory of
/// tables per convergence-bearing check. Throws std::runtime_error when the
/// directory cannot be written.
void emit_tables(const Report& report, const std::filesystem::path& dir);

/// Bundled scenario names (the stems of the files in the scenario directory).
std::vector<std::string> bundled_scenarios(const std::filesystem::path& dir);

/// A config path as given, or the bundled scenario of that name.
std::filesystem::path resolve_scenario(const std::string& name_or_path,
                                       const std::filesystem::path& scenario_dir);

}  // namespace alexandrov
