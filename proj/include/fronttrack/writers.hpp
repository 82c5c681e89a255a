#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "fronttrack/field.hpp"
#include "fronttrack/illposed.hpp"
#include "fronttrack/oracle.hpp"
#include "fronttrack/weak.hpp"

namespace fronttrack {

/// Decimal with 17 significant digits, as used by every table.
std::string format_number(double x);

/// Sample times: a uniform grid on [start, end] merged with the event times.
std::vector<double> trajectory_times(const WeakSolution& w, std::size_t samples);

/// Header t,x_1,...,x_N with one column per interface identity; cells of
/// interfaces that no longer exist are left empty.
void write_trajectories_csv(std::ostream& out, const WeakSolution& w,
                            const std::vector<double>& times);
void write_field_csv(std::ostream& out, const FieldSample& field);
void write_events_json(std::ostream& out, const WeakSolution& w, const std::string& name);

struct SvgWindow {
  double x_min;
  double x_max;
  double t_min;
  double t_max;
};

/// Time runs upward, space to the right; the excited set is shaded and
/// interfaces are stroked.
void write_spacetime_svg(std::ostream& out, const WeakSolution& w, const SvgWindow& window,
                         const std::string& title);
void write_illposed_svg(std::ostream& out, const IllPosedDemo& demo, const SvgWindow& window);
/// Columns t,s_front,s_back,separation.
void write_divergence_csv(std::ostream& out, const IllPosedDemo& demo,
                          const std::vector<double>& times);

void write_tracks_csv(std::ostream& out, const TrackSamples& tracks);
void write_oracle_summary(std::ostream& out, const std::vector<SweepEntry>& sweep,
                          double horizon);

/// Opens `path` for binary writing (so line endings stay LF) and calls `fill`.
template <class F>
void write_file(const std::filesystem::path& path, F&& fill);

}  // namespace fronttrack

#include <fstream>
#include <stdexcept>

template <class F>
void fronttrack::write_file(const std::filesystem::path& path, F&& fill) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  fill(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}
