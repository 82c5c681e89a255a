#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "fronttrack/config.hpp"

namespace fronttrack {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitDegenerate = 2,
  kExitNumerical = 3,
};

/// Runs one configuration and writes its artifacts into cfg.output.dir.
/// Failures are reported on `diag` and mapped to an exit code.
int run_scenario(const RunConfig& cfg, std::ostream& diag);

/// Runs every *.ini file of `config_dir` on worker threads, each into
/// out_dir/<file stem>. Returns the largest exit code.
int run_sweep(const std::filesystem::path& config_dir, const std::filesystem::path& out_dir,
              const Environment& env, std::ostream& diag, unsigned workers = 0);

}  // namespace fronttrack
