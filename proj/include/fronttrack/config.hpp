#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fronttrack/classical.hpp"
#include "fronttrack/kinetics.hpp"
#include "fronttrack/state.hpp"

namespace fronttrack {

/// All problems found in a configuration, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

enum class Mode { Weak, IllPosed };

struct OutputConfig {
  std::filesystem::path dir = "out";
  std::size_t trajectory_samples = 201;
  std::size_t field_x = 201;
  std::size_t field_t = 51;
  // Spatial window of field.csv and the diagram; both zero selects an
  // automatic window around the interfaces.
  double x_min = 0.0;
  double x_max = 0.0;
};

struct OracleConfig {
  std::vector<double> eps;  // empty disables the oracle
  double cells_per_eps = 10.0;
  double sample_dt = 0.01;
  double horizon = 0.0;  // 0 selects min(t_end, 1)
};

struct RunConfig {
  std::string name = "custom";
  std::string preset;
  Mode mode = Mode::Weak;
  Parameters params{1.0, 1.0, 3.0, 1.0, 1.0, 2.0};
  IntervalSet omega;
  Profile v0 = Profile::constant(0.0);
  double t_end = 1.0;
  SolverOptions solver;
  OutputConfig output;
  OracleConfig oracle;
};

struct ValidatedConfig {
  RunConfig config;
  std::vector<std::string> warnings;
};

using Environment = std::map<std::string, std::string>;

inline constexpr const char* kEnvPrefix = "FRONTTRACK_";

/// Variables FRONTTRACK_<SECTION>_<KEY> of the current process.
Environment process_environment();

/// Parses INI text. A [scenario] preset supplies defaults, keys in the text
/// override them and environment variables override both. `base_dir`
/// resolves relative profile_file paths. Throws ConfigError.
ValidatedConfig validate_config(const std::string& text, const Environment& env = {},
                                const std::filesystem::path& base_dir = ".");

ValidatedConfig load_config(const std::filesystem::path& file, const Environment& env = {});

/// Configuration of a named preset, with environment overrides applied.
ValidatedConfig preset_config(const std::string& name, const Environment& env = {});

/// "1, 2.5,3" -> {1, 2.5, 3}. Throws std::invalid_argument.
std::vector<double> parse_number_list(const std::string& text);

/// Text for --help: sections, keys, defaults and units.
std::string config_reference();

}  // namespace fronttrack
