#include "fronttrack/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "fronttrack/field.hpp"
#include "fronttrack/illposed.hpp"
#include "fronttrack/oracle.hpp"
#include "fronttrack/weak.hpp"
#include "fronttrack/writers.hpp"

namespace fronttrack {

namespace {

namespace fs = std::filesystem;

SvgWindow window_for(const RunConfig& cfg, const WeakSolution& w) {
  if (cfg.output.x_max > cfg.output.x_min) {
    return {cfg.output.x_min, cfg.output.x_max, w.start_time(), w.end_time()};
  }
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (const auto& seg : w.segments()) {
    for (const auto& tr : seg.trajectories()) {
      for (double t : {seg.start_time(), seg.end_time()}) {
        const double x = tr.position(t);
        lo = any ? std::min(lo, x) : x;
        hi = any ? std::max(hi, x) : x;
        any = true;
      }
    }
  }
  const auto samples = cfg.v0.abscissae();
  if (!any && !samples.empty()) {
    lo = samples.front();
    hi = samples.back();
  }
  const double pad = std::max(0.5, 0.1 * (hi - lo));
  return {lo - pad, hi + pad, w.start_time(), w.end_time()};
}

void run_weak_scenario(const RunConfig& cfg, std::ostream& diag) {
  const fs::path dir = cfg.output.dir;
  const auto w = run_weak(cfg.params, cfg.omega, cfg.v0, cfg.t_end, cfg.solver);
  for (const auto& seg : w.segments()) {
    for (const auto& warning : seg.stats().warnings) diag << "warning: " << warning << '\n';
  }
  if (!check_no_nucleation(w)) {
    throw std::runtime_error("interface bookkeeping failed the no-nucleation check");
  }

  write_file(dir / "trajectories.csv", [&](std::ostream& out) {
    write_trajectories_csv(out, w, trajectory_times(w, cfg.output.trajectory_samples));
  });
  const auto win = window_for(cfg, w);
  const auto field = sample_field(w, linspace(win.x_min, win.x_max, cfg.output.field_x),
                                  linspace(w.start_time(), w.end_time(), cfg.output.field_t));
  write_file(dir / "field.csv", [&](std::ostream& out) { write_field_csv(out, field); });
  write_file(dir / "events.json",
             [&](std::ostream& out) { write_events_json(out, w, cfg.name); });
  write_file(dir / "spacetime.svg",
             [&](std::ostream& out) { write_spacetime_svg(out, w, win, cfg.name); });

  if (!cfg.oracle.eps.empty()) {
    const double horizon =
        cfg.oracle.horizon > 0 ? std::min(cfg.oracle.horizon, cfg.t_end) : std::min(cfg.t_end, 1.0);
    auto eps = cfg.oracle.eps;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    const auto sweep = oracle_sweep(cfg.params, cfg.omega, cfg.v0, w, eps, horizon,
                                    cfg.oracle.sample_dt, cfg.oracle.cells_per_eps);
    for (const auto& s : sweep) {
      char tag[32];
      std::snprintf(tag, sizeof tag, "%g", s.eps);
      write_file(dir / ("oracle_eps_" + std::string(tag) + ".csv"),
                 [&](std::ostream& out) { write_tracks_csv(out, s.run.tracks); });
      diag << "oracle eps=" << s.eps << " sup error " << s.report.sup_error << " (relative "
           << s.report.relative_error << ")\n";
    }
    write_file(dir / "oracle_summary.json",
               [&](std::ostream& out) { write_oracle_summary(out, sweep, horizon); });
  }
}

void run_illposed_scenario(const RunConfig& cfg) {
  const fs::path dir = cfg.output.dir;
  const auto demo = ill_posedness_demo(cfg.params, cfg.t_end, cfg.solver.tol_step);
  const auto times = linspace(0.0, cfg.t_end, cfg.output.trajectory_samples);
  write_file(dir / "divergence.csv",
             [&](std::ostream& out) { write_divergence_csv(out, demo, times); });
  const double reach = std::max(std::abs(demo.front.position(cfg.t_end)),
                                std::abs(demo.back.position(cfg.t_end)));
  SvgWindow win{-1.5 * reach, 1.5 * reach, 0.0, cfg.t_end};
  if (cfg.output.x_max > cfg.output.x_min) {
    win.x_min = cfg.output.x_min;
    win.x_max = cfg.output.x_max;
  }
  write_file(dir / "spacetime.svg",
             [&](std::ostream& out) { write_illposed_svg(out, demo, win); });
}

}  // namespace

int run_scenario(const RunConfig& cfg, std::ostream& diag) {
  try {
    fs::create_directories(cfg.output.dir);
    if (cfg.mode == Mode::IllPosed) {
      run_illposed_scenario(cfg);
    } else {
      run_weak_scenario(cfg, diag);
    }
    return kExitOk;
  } catch (const H2Violation& e) {
    diag << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const IntervalError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    diag << "failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int run_sweep(const fs::path& config_dir, const fs::path& out_dir, const Environment& env,
              std::ostream& diag, unsigned workers) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(config_dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ini") {
      files.push_back(entry.path());
    }
  }
  if (ec) {
    diag << "error: cannot read " << config_dir.string() << ": " << ec.message() << '\n';
    return kExitConfig;
  }
  if (files.empty()) {
    diag << "error: no .ini files in " << config_dir.string() << '\n';
    return kExitConfig;
  }
  std::sort(files.begin(), files.end());

  std::vector<int> codes(files.size(), kExitOk);
  std::vector<std::string> logs(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      std::ostringstream log;
      try {
        auto v = load_config(files[i], env);
        for (const auto& warning : v.warnings) log << "warning: " << warning << '\n';
        v.config.output.dir = out_dir / files[i].stem();
        codes[i] = run_scenario(v.config, log);
      } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        codes[i] = kExitConfig;
      }
      logs[i] = log.str();
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(files.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  int worst = kExitOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    diag << "[" << files[i].stem().string() << "] exit " << codes[i] << '\n' << logs[i];
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace fronttrack
