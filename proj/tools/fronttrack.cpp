#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fronttrack/config.hpp"
#include "fronttrack/presets.hpp"
#include "fronttrack/scenario.hpp"

using namespace fronttrack;

namespace {

std::vector<double> parse_oracle_flag(const std::string& flag) {
  const std::string key = "eps=";
  if (flag.rfind(key, 0) != 0) throw ConfigError({"--oracle: expected eps=<list>, got '" + flag + "'"});
  try {
    return parse_number_list(flag.substr(key.size()));
  } catch (const std::exception& e) {
    throw ConfigError({std::string("--oracle: ") + e.what()});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Front tracking for the singular-limit FitzHugh-Nagumo interface system"};
  app.require_subcommand(1);
  app.footer(config_reference());

  auto* run = app.add_subcommand("run", "Run one configuration or a directory of them");
  std::string config_file;
  std::string preset;
  std::string oracle;
  std::string out_dir;
  std::string sweep_dir;
  run->add_option("config", config_file, "INI configuration file")->check(CLI::ExistingFile);
  run->add_option("--preset", preset, "Start from a named preset (see 'fronttrack presets')");
  run->add_option("--oracle", oracle, "Finite-difference cross-check, e.g. eps=0.05,0.02,0.01");
  run->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  run->add_option("--sweep", sweep_dir, "Run every *.ini in this directory")
      ->check(CLI::ExistingDirectory)
      ->excludes("config")
      ->excludes("--preset");

  auto* list = app.add_subcommand("presets", "List the built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& p : presets()) std::cout << p.name << "\t" << p.summary << '\n';
    return kExitOk;
  }

  const Environment env = process_environment();
  if (!sweep_dir.empty()) {
    return run_sweep(sweep_dir, out_dir.empty() ? "out" : out_dir, env, std::cerr);
  }

  try {
    ValidatedConfig v;
    if (!config_file.empty()) {
      if (!preset.empty()) {
        throw ConfigError({"give either a config file or --preset, not both "
                           "(a file can name a preset in [scenario] preset)"});
      }
      v = load_config(config_file, env);
    } else if (!preset.empty()) {
      v = preset_config(preset, env);
    } else {
      throw ConfigError({"nothing to run: give a config file, --preset or --sweep"});
    }
    if (!oracle.empty()) v.config.oracle.eps = parse_oracle_flag(oracle);
    if (!out_dir.empty()) v.config.output.dir = out_dir;
    for (const auto& w : v.warnings) std::cerr << "warning: " << w << '\n';
    return run_scenario(v.config, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }
}
