#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "fronttrack/classical.hpp"

namespace fronttrack {

class GlueMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The data after an annihilation failed re-validation. The continuation
/// theory guarantees it cannot, so this flags numerical trouble.
class SurgeryH2Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classical segments glued at annihilation times.
class WeakSolution {
 public:
  explicit WeakSolution(Parameters p) : params_(std::move(p)) {}

  const Parameters& parameters() const { return params_; }
  const std::vector<ClassicalSegment>& segments() const { return segments_; }
  const std::vector<EventRecord>& events() const { return events_; }
  bool empty() const { return segments_.empty(); }
  double start_time() const;
  double end_time() const;

  /// Segment that owns time t. At an annihilation time this is the segment
  /// that starts there, so Omega(T_A) is the post-surgery set.
  const ClassicalSegment& segment_at(double t) const;
  std::size_t segment_index(double t) const;

  double evaluate_v(double x, double t) const;
  IntervalSet set_at(double t) const;
  std::vector<double> interface_positions(double t) const;
  /// Ids of the interfaces present at time t, left to right.
  std::vector<int> interface_ids(double t) const;

  /// Low-level append used by glue(); performs no checks.
  void push(ClassicalSegment seg, std::span<const EventRecord> events);

 private:
  Parameters params_;
  std::vector<ClassicalSegment> segments_;
  std::vector<EventRecord> events_;
};

struct SurgeryResult {
  IntervalSet omega;
  Profile v;
  std::vector<int> ids;
  std::vector<EventRecord> events;  // with sequential component counts
  ValidationReport report;
};

/// Removes the colliding endpoint pairs and samples v(., T_A) onto a refreshed
/// profile. Events are applied in the given order.
SurgeryResult annihilation_surgery(const ClassicalSegment& seg,
                                   std::span<const EventRecord> events);
SurgeryResult annihilation_surgery(const ClassicalSegment& seg, const EventRecord& event);

/// Samples v(., t) of a segment on a grid refined until linear interpolation
/// reproduces midpoints within options().tol_resample.
Profile resample_profile(const ClassicalSegment& seg, double t,
                         std::span<const double> extra_points = {});

/// Appends `next` after checking that it starts where w ends with matching
/// interface positions and v. `events` are the annihilations separating them.
WeakSolution glue(WeakSolution w, ClassicalSegment next,
                  std::span<const EventRecord> events = {});

/// Alternates classical segments and surgeries until t_end.
WeakSolution run_weak(const Parameters& p, const IntervalSet& omega0, const Profile& v0,
                      double t_end, const SolverOptions& options = {});

/// Interfaces present on one time interval, by persistent id.
struct TraceFrame {
  double t_start;
  double t_end;
  std::vector<int> ids;
};

struct Trace {
  std::vector<TraceFrame> frames;
  std::vector<EventRecord> events;
};

Trace trace_of(const WeakSolution& w);

/// True iff every interface is traceable to the start or ends at a recorded
/// annihilation, and the number of components never increases.
bool check_no_nucleation(const Trace& trace);
bool check_no_nucleation(const WeakSolution& w);

}  // namespace fronttrack
