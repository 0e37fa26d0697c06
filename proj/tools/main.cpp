#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/scenario.hpp"

using namespace possfuse::cli;

int main(int argc, char** argv) {
  CLI::App app{"Fuse continuous possibility functions and measure their conflict"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::size_t oracle_n = 0;
  bool strict = false;

  auto* fuse = app.add_subcommand("fuse", "Combine the sources of a scenario file");
  fuse->add_option("scenario", scenario_path, "Scenario JSON")->required();
  fuse->add_option("--out", out_dir, "Output directory");
  auto* fuse_oracle = fuse->add_option("--oracle", oracle_n, "Cross-check with Dempster's rule at N levels");
  fuse->add_flag("--strict", strict, "Exit 4 when agreement cannot be computed");

  std::size_t check_n = 0;
  double check_tol = 0.0;
  auto* check = app.add_subcommand("oracle-check", "Compare agreement with Dempster's rule");
  check->add_option("scenario", scenario_path, "Scenario JSON")->required();
  check->add_option("--n", check_n, "Discretization levels")->required();
  check->add_option("--tol", check_tol, "Allowed |a - (1 - k_n)|")->required();

  std::string preset_name;
  std::string dump_path;
  auto* pre = app.add_subcommand("preset", "Run a built-in scenario");
  pre->add_option("name", preset_name, "speeding, speeding-agree or speeding-conflict")->required();
  pre->add_option("--out", out_dir, "Output directory");
  auto* pre_oracle = pre->add_option("--oracle", oracle_n, "Cross-check with Dempster's rule at N levels");
  pre->add_flag("--strict", strict, "Exit 4 when agreement cannot be computed");
  pre->add_option("--write-scenario", dump_path, "Also write the preset as a scenario file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitMalformed;
  }

  try {
    if (*check) {
      return run_oracle_check(load_scenario(scenario_path), check_n, check_tol, std::cout,
                              std::cerr);
    }

    std::optional<Scenario> scenario;
    FuseOptions options;
    options.out_dir = out_dir;
    options.strict = strict;
    if (*fuse) {
      scenario = load_scenario(scenario_path);
      if (*fuse_oracle) options.oracle_n = oracle_n;
    } else {
      scenario = preset(preset_name);
      if (!scenario) {
        std::cerr << "error: unknown preset \"" << preset_name << "\"\n";
        return kExitMalformed;
      }
      if (*pre_oracle) options.oracle_n = oracle_n;
      if (!dump_path.empty()) {
        std::ofstream(dump_path) << to_json(*scenario).dump(2) << "\n";
      }
    }
    return run_fuse(*scenario, options, std::cout, std::cerr);
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
}
