#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fronttrack/dopri5.hpp"
#include "fronttrack/kinetics.hpp"
#include "fronttrack/state.hpp"

namespace fronttrack {

struct SolverOptions {
  double tol_step = 1e-10;   // rtol = atol of the embedded pair
  double tol_event = 1e-10;  // bisection width for annihilation times
  double eta = 0.0;          // degeneracy margin; 0 selects default_margin()
  double dt_max = 0.05;
  double h_init = 1e-3;
  double tol_resample = 1e-9;  // profile refinement after surgery
};

class NotReached : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

enum class EventKind { Merge, Vanish };

const char* to_string(EventKind kind);

/// One annihilation: interfaces k and k+1 (1-based, numbering of the segment
/// that ends at `time`) collide at `position`.
struct EventRecord {
  double time = 0.0;
  EventKind kind = EventKind::Merge;
  std::size_t left_index = 0;
  std::size_t right_index = 0;
  int left_id = -1;  // identities that persist across segments
  int right_id = -1;
  double position = 0.0;
  std::size_t components_before = 0;
  std::size_t components_after = 0;
};

/// Monotone position history x_k(t) of one interface over one segment,
/// stored as the dense output of the accepted integrator steps.
class InterfaceTrajectory {
 public:
  InterfaceTrajectory(std::size_t index, int id, double birth, double x0, int direction,
                      Phase ahead);

  std::size_t index() const { return index_; }
  int id() const { return id_; }
  /// +1 when x_k increases, -1 when it decreases.
  int direction() const { return direction_; }
  /// Phase of the points the interface is about to sweep over.
  Phase ahead() const { return ahead_; }
  Phase behind() const { return opposite(ahead_); }

  double birth() const { return birth_; }
  /// End of validity: the annihilation time or the close of the segment.
  std::optional<double> death() const { return death_; }
  double end_time() const { return death_ ? *death_ : covered_until(); }
  double covered_until() const { return spans_.empty() ? birth_ : spans_.back().t1(); }

  double initial_position() const { return x0_; }
  double position(double t) const;
  double velocity(double t) const;

  /// Time at which the interface reaches y. Points already behind the
  /// starting position get the birth time. Throws NotReached when y is not
  /// attained by end_time().
  double arrival_time(double y) const;
  std::optional<double> try_arrival_time(double y) const;

  void append(const DenseSpan& span) { spans_.push_back(span); }
  void drop_last() { spans_.pop_back(); }
  void set_death(double t) { death_ = t; }
  std::span<const DenseSpan> spans() const { return spans_; }

 private:
  const DenseSpan& span_at(double t) const;

  std::size_t index_;
  int id_;
  double birth_;
  double x0_;
  int direction_;
  Phase ahead_;
  std::optional<double> death_;
  std::vector<DenseSpan> spans_;
};

/// Phase history of a fixed point x: piece i holds from t_start[i] until the
/// next piece starts.
struct PhasePiece {
  double t_start;
  Phase phase;
  double v_start;
};

struct PointHistory {
  double x = 0.0;
  std::vector<PhasePiece> pieces;

  double value(const Parameters& p, double t) const;
  const PhasePiece& piece_at(double t) const;
  /// Switch times strictly inside (lo, hi).
  std::vector<double> switches_within(double lo, double hi) const;
};

struct SegmentStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  double smallest_gap = 0.0;
  double min_speed = 0.0;  // min over accepted steps of |W(v(x_k,t))|
  std::vector<std::string> warnings;
};

class SegmentError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Classical solution on one annihilation-free time interval [t_a, t_b].
class ClassicalSegment {
 public:
  /// Requires validate_initial() to accept the data; throws H2Violation otherwise.
  /// `ids` labels the interfaces for bookkeeping across segments (defaults to 0..2m-1).
  ClassicalSegment(Parameters p, IntervalSet omega, Profile v, double t_a,
                   SolverOptions options, std::vector<int> ids = {});

  const Parameters& parameters() const { return params_; }
  const IntervalSet& initial_set() const { return omega0_; }
  const Profile& initial_profile() const { return v0_; }
  const SolverOptions& options() const { return options_; }
  double margin() const { return eta_; }
  double start_time() const { return t_a_; }
  double end_time() const { return t_; }
  bool ended() const { return ended_; }
  const ValidationReport& initial_report() const { return report_; }

  std::size_t interface_count() const { return traj_.size(); }
  const std::vector<InterfaceTrajectory>& trajectories() const { return traj_; }
  const InterfaceTrajectory& trajectory(std::size_t k) const { return traj_.at(k - 1); }
  std::vector<double> step_times() const;
  const SegmentStats& stats() const { return stats_; }

  /// v(x,t) rebuilt from the arrival times of the interfaces that swept x.
  double evaluate_v(double x, double t) const;
  PointHistory history(double x) const;
  PointHistory history(double x, double t_upto) const;
  /// As above, ignoring interface `skip` (1-based) so that v on an interface
  /// is read from the side ahead of it.
  PointHistory history(double x, double t_upto, std::size_t skip) const;

  /// (-1)^k W(v(x_k(t), t)) with v from evaluate_v.
  double interface_velocity(std::size_t k, double t) const;

  std::vector<double> positions(double t) const;
  /// Omega(t); valid for t strictly before an annihilation.
  IntervalSet set_at(double t) const;

  /// One accepted step of the coupled interface system, never past t_stop.
  void advance(double dt_max, double t_stop = std::numeric_limits<double>::infinity());

  /// Earliest time inside the most recent step at which an interface crosses
  /// a kink of the data (a break of v0 or an initial endpoint).
  std::optional<double> first_kink_crossing() const;

  /// Undoes the most recent advance. Only one level of undo is kept.
  void rollback();

  /// Annihilations inside the most recent step, earliest first. Several
  /// records are returned only when their times agree within tol_event.
  std::vector<EventRecord> locate_event() const;

  /// Closes the segment at t_b (an event time or the horizon).
  void close(double t_b);

  /// Right-hand side for interface k given all positions y at time t, where
  /// t lies in the step being taken from end_time(). Exposed for tests.
  double rhs(std::size_t k, double t, std::span<const double> y) const;

 private:
  struct Crossing {
    double t;
    Phase phase;
  };
  void check_time(double t) const;
  PointHistory compose(double x, std::vector<Crossing>& crossings) const;
  double step_arrival(std::size_t j, double t, double y, double x) const;

  Parameters params_;
  IntervalSet omega0_;
  Profile v0_;
  double t_a_;
  SolverOptions options_;
  double eta_;
  ValidationReport report_;
  std::vector<InterfaceTrajectory> traj_;

  double t_;
  double h_;
  bool ended_ = false;
  std::vector<double> y_;
  std::vector<double> start_speed_;
  std::vector<double> prev_y_;
  double prev_t_ = 0.0;
  double prev_h_ = 0.0;
  bool can_rollback_ = false;  // signed velocities at the start of the current step
  Dopri5 stepper_;
  SegmentStats stats_;
};

struct SegmentRun {
  ClassicalSegment segment;
  std::vector<EventRecord> events;
};

/// Integrates until t_end or the first annihilation, whichever comes first.
SegmentRun run_segment(const Parameters& p, const IntervalSet& omega, const Profile& v,
                       double t_a, double t_end, const SolverOptions& options,
                       std::vector<int> ids = {});

}  // namespace fronttrack
