#include "fronttrack/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fronttrack/presets.hpp"

extern char** environ;

namespace fronttrack {

namespace pt = boost::property_tree;

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid configuration:";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"scenario", {"name", "preset", "mode"}},
      {"parameters", {"g1", "g2", "g3", "g4", "a", "b"}},
      {"initial", {"intervals", "v0", "profile", "profile_file"}},
      {"solver", {"t_end", "tol_step", "tol_event", "eta", "dt_max"}},
      {"output",
       {"dir", "trajectory_samples", "field_x", "field_t", "x_min", "x_max"}},
      {"oracle", {"eps", "cells_per_eps", "sample_dt", "horizon"}},
  };
  return keys;
}

const std::set<std::string> kProfileKeys = {"v0", "profile", "profile_file"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("'" + t + "' is not a number");
  }
  if (used != t.size()) throw std::invalid_argument("'" + t + "' is not a number");
  if (!std::isfinite(v)) throw std::invalid_argument("'" + t + "' is not finite");
  return v;
}

pt::ptree parse_ini(const std::string& text, const std::string& origin,
                    std::vector<std::string>& errors) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    errors.push_back(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  return tree;
}

// Copies every key of `over` into `base`. Setting any of the v0 keys replaces
// the whole initial-profile choice of `base`.
void overlay(pt::ptree& base, const pt::ptree& over) {
  for (const auto& [section, keys] : over) {
    if (section == "initial") {
      const bool replaces = std::any_of(keys.begin(), keys.end(), [](const auto& kv) {
        return kProfileKeys.count(kv.first) > 0;
      });
      if (replaces) {
        if (auto sec = base.get_child_optional("initial")) {
          for (const auto& k : kProfileKeys) sec->erase(k);
        }
      }
    }
    for (const auto& [key, value] : keys) {
      base.put(pt::ptree::path_type(section + "." + key, '.'), value.data());
    }
  }
}

pt::ptree environment_tree(const Environment& env, std::vector<std::string>& errors) {
  pt::ptree tree;
  const std::string prefix = kEnvPrefix;
  for (const auto& [name, value] : env) {
    if (name.rfind(prefix, 0) != 0) continue;
    const std::string rest = name.substr(prefix.size());
    const auto cut = rest.find('_');
    if (cut == std::string::npos || cut == 0 || cut + 1 == rest.size()) {
      errors.push_back("environment variable " + name + " does not name SECTION_KEY");
      continue;
    }
    std::string section = rest.substr(0, cut);
    std::string key = rest.substr(cut + 1);
    auto lower = [](std::string& s) {
      std::transform(s.begin(), s.end(), s.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    };
    lower(section);
    lower(key);
    tree.put(pt::ptree::path_type(section + "." + key, '.'), value);
  }
  return tree;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::vector<std::string>& errors) : tree_(tree), errors_(errors) {}

  std::optional<std::string> text(const std::string& section, const std::string& key) const {
    const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(section + "." + key, '.'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  std::optional<double> number(const std::string& section, const std::string& key) {
    const auto t = text(section, key);
    if (!t) return std::nullopt;
    try {
      return parse_number(*t);
    } catch (const std::invalid_argument& e) {
      errors_.push_back(section + "." + key + ": " + e.what());
      return std::nullopt;
    }
  }

  double number_or(const std::string& section, const std::string& key, double fallback) {
    return number(section, key).value_or(fallback);
  }

  std::optional<std::size_t> count(const std::string& section, const std::string& key) {
    const auto v = number(section, key);
    if (!v) return std::nullopt;
    if (*v < 0 || std::floor(*v) != *v) {
      errors_.push_back(section + "." + key + ": expected a non-negative integer");
      return std::nullopt;
    }
    return static_cast<std::size_t>(*v);
  }

 private:
  const pt::ptree& tree_;
  std::vector<std::string>& errors_;
};

std::vector<Interval> parse_intervals(const std::string& text) {
  std::vector<Interval> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ',')) {
    if (trim(item).empty()) continue;
    std::istringstream pair(item);
    std::string l, r, extra;
    if (!(pair >> l >> r) || (pair >> extra)) {
      throw std::invalid_argument("'" + trim(item) + "' is not a pair 'left right'");
    }
    out.push_back({parse_number(l), parse_number(r)});
  }
  return out;
}

Profile parse_profile(const std::string& text) {
  std::vector<double> xs, vs;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ',')) {
    if (trim(item).empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("'" + trim(item) + "' is not a sample 'x:v'");
    }
    xs.push_back(parse_number(item.substr(0, colon)));
    vs.push_back(parse_number(item.substr(colon + 1)));
  }
  return Profile(std::move(xs), std::move(vs));
}

Profile read_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::vector<double> xs, vs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": expected 'x,v'");
    }
    try {
      const double x = parse_number(line.substr(0, comma));
      const double v = parse_number(line.substr(comma + 1));
      xs.push_back(x);
      vs.push_back(v);
    } catch (const std::invalid_argument&) {
      if (xs.empty() && lineno == 1) continue;  // header row
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": expected 'x,v'");
    }
  }
  return Profile(std::move(xs), std::move(vs));
}

ValidatedConfig build(const pt::ptree& tree, std::vector<std::string> errors,
                      const std::filesystem::path& base_dir) {
  ValidatedConfig out;
  RunConfig& cfg = out.config;
  Reader r(tree, errors);

  for (const auto& [section, keys] : tree) {
    auto known = known_keys().find(section);
    if (known == known_keys().end()) {
      errors.push_back("unknown section [" + section + "]");
      continue;
    }
    for (const auto& kv : keys) {
      if (!known->second.count(kv.first)) {
        errors.push_back("unknown key " + section + "." + kv.first);
      }
    }
  }

  cfg.name = r.text("scenario", "name").value_or("custom");
  cfg.preset = r.text("scenario", "preset").value_or("");
  const std::string mode = r.text("scenario", "mode").value_or("weak");
  if (mode == "weak") {
    cfg.mode = Mode::Weak;
  } else if (mode == "illposed") {
    cfg.mode = Mode::IllPosed;
  } else {
    errors.push_back("scenario.mode: expected 'weak' or 'illposed', got '" + mode + "'");
  }

  // Parameters: report every missing or out-of-range field before building.
  std::map<std::string, double> values;
  bool params_ok = true;
  for (const char* key : {"g1", "g2", "g3", "g4", "a", "b"}) {
    const bool present = r.text("parameters", key).has_value();
    const auto v = r.number("parameters", key);
    if (!present) {
      errors.push_back(std::string("parameters.") + key + ": missing");
      params_ok = false;
    } else if (!v) {
      params_ok = false;
    } else if (!(*v > 0)) {
      errors.push_back(std::string("parameters.") + key + ": must be positive");
      params_ok = false;
    } else {
      values[key] = *v;
    }
  }
  if (params_ok) {
    try {
      cfg.params = Parameters(values["g1"], values["g2"], values["g3"], values["g4"], values["a"],
                              values["b"]);
      const std::string w = assumption_warning(cfg.params);
      if (!w.empty()) out.warnings.push_back(w);
    } catch (const ParameterError& e) {
      errors.push_back(std::string("parameters: ") + e.what());
    }
  }

  if (cfg.mode == Mode::Weak) {
    if (const auto t = r.text("initial", "intervals")) {
      try {
        cfg.omega = IntervalSet(parse_intervals(*t));
      } catch (const std::exception& e) {
        errors.push_back(std::string("initial.intervals: ") + e.what());
      }
    } else {
      errors.push_back("initial.intervals: missing");
    }
  }
  int sources = 0;
  for (const auto& key : kProfileKeys) sources += r.text("initial", key).has_value() ? 1 : 0;
  if (sources > 1) {
    errors.push_back("initial: give at most one of v0, profile, profile_file");
  } else if (const auto c = r.number("initial", "v0")) {
    if (*c < 0) {
      errors.push_back("initial.v0: must be non-negative");
    } else {
      cfg.v0 = Profile::constant(*c);
    }
  } else if (const auto t = r.text("initial", "profile")) {
    try {
      cfg.v0 = parse_profile(*t);
    } catch (const std::exception& e) {
      errors.push_back(std::string("initial.profile: ") + e.what());
    }
  } else if (const auto f = r.text("initial", "profile_file")) {
    std::filesystem::path path(*f);
    if (path.is_relative()) path = base_dir / path;
    try {
      cfg.v0 = read_profile_file(path);
    } catch (const std::exception& e) {
      errors.push_back(std::string("initial.profile_file: ") + e.what());
    }
  }

  auto positive = [&](const char* section, const char* key, double& slot) {
    if (const auto v = r.number(section, key)) {
      if (*v > 0) {
        slot = *v;
      } else {
        errors.push_back(std::string(section) + "." + key + ": must be positive");
      }
    }
  };
  positive("solver", "t_end", cfg.t_end);
  positive("solver", "tol_step", cfg.solver.tol_step);
  positive("solver", "tol_event", cfg.solver.tol_event);
  positive("solver", "dt_max", cfg.solver.dt_max);
  if (const auto v = r.number("solver", "eta")) {
    if (*v >= 0) {
      cfg.solver.eta = *v;
    } else {
      errors.push_back("solver.eta: must be non-negative (0 selects the default)");
    }
  }

  if (const auto d = r.text("output", "dir")) {
    if (d->empty()) {
      errors.push_back("output.dir: empty");
    } else {
      cfg.output.dir = *d;
    }
  }
  auto at_least_two = [&](const char* key, std::size_t& slot) {
    if (const auto n = r.count("output", key)) {
      if (*n >= 2) {
        slot = *n;
      } else {
        errors.push_back(std::string("output.") + key + ": needs at least 2 points");
      }
    }
  };
  at_least_two("trajectory_samples", cfg.output.trajectory_samples);
  at_least_two("field_x", cfg.output.field_x);
  at_least_two("field_t", cfg.output.field_t);
  cfg.output.x_min = r.number_or("output", "x_min", 0.0);
  cfg.output.x_max = r.number_or("output", "x_max", 0.0);
  if (cfg.output.x_min > cfg.output.x_max) {
    errors.push_back("output: x_min must not exceed x_max");
  }

  if (const auto t = r.text("oracle", "eps")) {
    try {
      cfg.oracle.eps = parse_number_list(*t);
      for (double e : cfg.oracle.eps) {
        if (!(e > 0)) errors.push_back("oracle.eps: values must be positive");
      }
    } catch (const std::exception& e) {
      errors.push_back(std::string("oracle.eps: ") + e.what());
    }
  }
  positive("oracle", "cells_per_eps", cfg.oracle.cells_per_eps);
  positive("oracle", "sample_dt", cfg.oracle.sample_dt);
  positive("oracle", "horizon", cfg.oracle.horizon);

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return out;
}

ValidatedConfig from_tree(pt::ptree user, std::vector<std::string> errors, const Environment& env,
                          const std::filesystem::path& base_dir) {
  pt::ptree tree;
  const auto preset = user.get_optional<std::string>("scenario.preset");
  if (preset) {
    const std::string name = trim(*preset);
    if (is_preset(name)) {
      tree = parse_ini(find_preset(name).ini, "preset " + name, errors);
    } else {
      std::string list;
      for (const auto& p : presets()) list += (list.empty() ? "" : ", ") + p.name;
      errors.push_back("scenario.preset: unknown preset '" + name + "' (known: " + list + ")");
    }
  }
  overlay(tree, user);
  overlay(tree, environment_tree(env, errors));
  return build(tree, std::move(errors), base_dir);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

Environment process_environment() {
  Environment env;
  const std::string prefix = kEnvPrefix;
  for (char** e = environ; e && *e; ++e) {
    const std::string entry(*e);
    if (entry.rfind(prefix, 0) != 0) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) continue;
    env[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  return env;
}

ValidatedConfig validate_config(const std::string& text, const Environment& env,
                                const std::filesystem::path& base_dir) {
  std::vector<std::string> errors;
  auto user = parse_ini(text, "config", errors);
  return from_tree(std::move(user), std::move(errors), env, base_dir);
}

ValidatedConfig load_config(const std::filesystem::path& file, const Environment& env) {
  std::ifstream in(file);
  if (!in) throw ConfigError({"cannot open config file " + file.string()});
  std::ostringstream text;
  text << in.rdbuf();
  auto out = validate_config(text.str(), env, file.parent_path());
  if (out.config.name == "custom") out.config.name = file.stem().string();
  return out;
}

ValidatedConfig preset_config(const std::string& name, const Environment& env) {
  if (!is_preset(name)) return validate_config("[scenario]\npreset = " + name + "\n", env);
  pt::ptree user;
  user.put("scenario.preset", name);
  return from_tree(std::move(user), {}, env, ".");
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_number(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::string config_reference() {
  return R"(Configuration file (INI):
  [scenario]
    name         label used in outputs (default: file stem or preset name)
    preset       start from a preset; keys in the file override it
    mode         weak | illposed (default weak)
  [parameters]   all required, positive, with g1*g3 > g2
    g1 g2 g3 g4  kinetics g(u,v) = g1*u - g2*v/(g3*v + g4)
    a b          front speed W(v) = a - b*v
  [initial]
    intervals    excited set, e.g. "-3 -1, 1 3"
    v0           constant recovery level (default 0), or
    profile      piecewise-linear samples "x:v, x:v, ...", or
    profile_file CSV with columns x,v (relative to the config file)
  [solver]
    t_end        horizon (default 1)
    tol_step     integrator tolerance, relative and absolute (default 1e-10)
    tol_event    annihilation time tolerance (default 1e-10)
    eta          degeneracy margin on |W(v0)| at interfaces (0 = automatic)
    dt_max       largest integrator step (default 0.05)
  [output]
    dir                 output directory (default out)
    trajectory_samples  rows of trajectories.csv (default 201)
    field_x field_t     grid of field.csv (default 201 x 51)
    x_min x_max         spatial window (default: automatic)
  [oracle]
    eps            comma-separated list of epsilon values (default: off)
    cells_per_eps  grid cells per epsilon (default 10)
    sample_dt      oracle sampling interval (default 0.01)
    horizon        comparison horizon (default min(t_end, 1))

Every key can be overridden by an environment variable
FRONTTRACK_<SECTION>_<KEY>, e.g. FRONTTRACK_SOLVER_T_END=2.

Exit codes: 0 success, 1 configuration error, 2 degenerate initial data
(W(v0) vanishes at an interface), 3 numerical failure.
)";
}

}  // namespace fronttrack
