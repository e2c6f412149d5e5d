// Scenario runner.
//
//   alexandrov run <config.json | bundled name> [--out DIR] [--seed N]
//   alexandrov --list-scenarios
//
// Exit status: 0 when every asserted check passes, 1 when one fails, 2 for
// unreadable or invalid configs.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "alexandrov/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kOutDirEnv = "ALEXANDROV_OUT_DIR";

fs::path scenario_dir() {
  if (const char* env = std::getenv("ALEXANDROV_SCENARIO_DIR")) return env;
  return ALEXANDROV_SCENARIO_DIR;
}

void list_scenarios() {
  for (const auto& name : alexandrov::bundled_scenarios(scenario_dir())) std::cout << name << '\n';
}

void print_report(const alexandrov::Report& report) {
  std::printf("scenario %s (seed %llu)\n", report.name.c_str(),
              static_cast<unsigned long long>(report.seed));
  for (const auto& c : report.checks) {
    std::printf("  %-18s %-32s value=%-22.15g bound=%.3g", alexandrov::to_string(c.status).c_str(),
                c.id.c_str(), c.value, c.error_bound);
    if (!c.message.empty()) std::printf("  [%s]", c.message.c_str());
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison-geometry scenario runner"};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list-scenarios", list, "List bundled scenarios and exit");

  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool run_list = false;
  CLI::App* run = app.add_subcommand("run", "Run a scenario config");
  run->add_option("config", config, "Config file or bundled scenario name");
  run->add_option("--out", out_dir,
                  std::string("Output directory (default: $") + kOutDirEnv + "/<name> or out/<name>)");
  run->add_option("--seed", seed, "Override the config's seed");
  run->add_flag("--list-scenarios", run_list, "List bundled scenarios and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list || run_list) {
    list_scenarios();
    return 0;
  }
  if (!*run) {
    std::cerr << app.help();
    return 2;
  }
  if (config.empty()) {
    std::cerr << "run: a config file or scenario name is required\n";
    return 2;
  }

  try {
    const fs::path file = alexandrov::resolve_scenario(config, scenario_dir());
    const alexandrov::Report report = alexandrov::run_scenario(file, seed);
    fs::path out;
    if (!out_dir.empty()) {
      out = out_dir;
    } else if (const char* env = std::getenv(kOutDirEnv)) {
      out = fs::path(env) / report.name;
    } else {
      out = fs::path("out") / report.name;
    }
    alexandrov::emit_tables(report, out);
    print_report(report);
    std::printf("wrote %s\n", out.string().c_str());
    return report.exit_code();
  } catch (const alexandrov::ScenarioError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
