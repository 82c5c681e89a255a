#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fronttrack/kinetics.hpp"
#include "fronttrack/state.hpp"

namespace fronttrack {

class WeakSolution;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InterfaceCountMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Explicit finite-difference setup for
///   u_t = u_xx + (f_eps(u) - eps*beta*v) / eps^2,   v_t = g(u, v)
/// on [x_left, x_right] with homogeneous Neumann ends, where
/// f_eps(u) = u(1-u)(u - 1/2 + eps*alpha), alpha = a/sqrt(2), beta = b/(6 sqrt(2)).
struct FHNConfig {
  double eps = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  double x_left = 0.0;
  double x_right = 0.0;

  /// dx = eps / cells_per_eps, dt = cfl * min(dx^2/2, eps^2/4).
  static FHNConfig make(const Parameters& p, double eps, double x_left, double x_right,
                        double cells_per_eps = 10.0, double cfl = 0.9);

  std::size_t points() const;
  double x(std::size_t i) const { return x_left + dx * static_cast<double>(i); }
  /// Throws OracleError when the stability bounds or the parameter map fail.
  void validate(const Parameters& p) const;
};

/// Interval [x_left, x_right] keeping every interface at least
/// 10 eps + (a + b sup v0) T away from the ends.
std::pair<double, double> oracle_domain(const Parameters& p, const IntervalSet& omega,
                                        const Profile& v0, double eps, double horizon);

struct FHNState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

double f_eps(double u, double eps, double alpha);

/// u is a tanh step of width 2 sqrt(2) eps, equal to 1/2 at every endpoint.
FHNState init_fhn(const FHNConfig& cfg, const Parameters& p, const IntervalSet& omega,
                  const Profile& v0);

/// One explicit Euler step into `out` (resized as needed). OpenMP-parallel.
void step_fhn_into(const FHNConfig& cfg, const Parameters& p, const FHNState& in, FHNState& out);
/// Serial reference of step_fhn_into; results are bitwise identical.
void step_fhn_reference(const FHNConfig& cfg, const Parameters& p, const FHNState& in,
                        FHNState& out);
FHNState step_fhn(const FHNConfig& cfg, const Parameters& p, const FHNState& s);

struct Crossing {
  double x;
  bool rising;  // u increases through 1/2 from left to right
};

/// Level-1/2 crossings of u, left to right, by linear interpolation.
std::vector<Crossing> extract_interfaces(const FHNConfig& cfg, const FHNState& s);
std::vector<double> interface_positions(const FHNConfig& cfg, const FHNState& s);

/// Interface positions sampled at common times.
struct TrackSamples {
  std::vector<double> times;
  std::vector<std::vector<double>> positions;
};

struct FHNRun {
  FHNConfig config;
  TrackSamples tracks;
  FHNState final_state;
  std::size_t steps = 0;
};

/// Runs to `horizon`, recording interfaces every `sample_dt`.
FHNRun run_fhn(const FHNConfig& cfg, const Parameters& p, const IntervalSet& omega,
               const Profile& v0, double horizon, double sample_dt);

TrackSamples sample_tracks(const WeakSolution& w, const std::vector<double>& times);

struct ComparisonReport {
  double sup_error = 0.0;
  double time_of_sup = 0.0;
  double max_displacement = 0.0;  // of the reference tracks
  double relative_error = 0.0;    // sup_error / max_displacement
  std::size_t compared_times = 0;
};

/// Sup over common sample times up to horizon of matched position errors.
/// Count mismatches before `first_event` throw InterfaceCountMismatch; later
/// ones are skipped.
ComparisonReport compare_tracks(const TrackSamples& candidate, const TrackSamples& reference,
                                double horizon, double first_event);

ComparisonReport compare_trajectories(const FHNRun& fhn, const WeakSolution& w, double horizon);

struct SweepEntry {
  double eps;
  FHNConfig config;
  ComparisonReport report;
  FHNRun run;
};

std::vector<SweepEntry> oracle_sweep(const Parameters& p, const IntervalSet& omega,
                                     const Profile& v0, const WeakSolution& w,
                                     const std::vector<double>& eps_list, double horizon,
                                     double sample_dt = 0.01, double cells_per_eps = 10.0);

}  // namespace fronttrack
