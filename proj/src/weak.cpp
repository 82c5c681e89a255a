#include "fronttrack/weak.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace fronttrack {

namespace {

constexpr double kGlueTolerance = 1e-8;
constexpr double kPositionTolerance = 1e-9;
constexpr int kBaseCells = 256;
constexpr double kMinCell = 1e-7;

double time_slack(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

}  // namespace

double WeakSolution::start_time() const {
  return segments_.empty() ? 0.0 : segments_.front().start_time();
}

double WeakSolution::end_time() const {
  return segments_.empty() ? 0.0 : segments_.back().end_time();
}

std::size_t WeakSolution::segment_index(double t) const {
  if (segments_.empty()) throw SegmentError("empty weak solution");
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    if (t < segments_[i].end_time()) return i;
  }
  return segments_.size() - 1;
}

const ClassicalSegment& WeakSolution::segment_at(double t) const {
  return segments_[segment_index(t)];
}

double WeakSolution::evaluate_v(double x, double t) const { return segment_at(t).evaluate_v(x, t); }

IntervalSet WeakSolution::set_at(double t) const { return segment_at(t).set_at(t); }

std::vector<double> WeakSolution::interface_positions(double t) const {
  return segment_at(t).positions(t);
}

std::vector<int> WeakSolution::interface_ids(double t) const {
  std::vector<int> ids;
  for (const auto& tr : segment_at(t).trajectories()) ids.push_back(tr.id());
  return ids;
}

void WeakSolution::push(ClassicalSegment seg, std::span<const EventRecord> events) {
  events_.insert(events_.end(), events.begin(), events.end());
  segments_.push_back(std::move(seg));
}

Profile resample_profile(const ClassicalSegment& seg, double t,
                         std::span<const double> extra_points) {
  // v(., t) is smooth away from the old kinks, the event points and the
  // start and end points of the trajectories.
  std::vector<double> kinks(seg.initial_profile().breaks().begin(),
                            seg.initial_profile().breaks().end());
  kinks.insert(kinks.end(), extra_points.begin(), extra_points.end());
  for (const auto& tr : seg.trajectories()) {
    kinks.push_back(tr.initial_position());
    kinks.push_back(tr.position(t));
  }
  std::vector<double> keys(seg.initial_profile().abscissae().begin(),
                           seg.initial_profile().abscissae().end());
  keys.insert(keys.end(), kinks.begin(), kinks.end());
  std::sort(keys.begin(), keys.end());
  const double lo = keys.front();
  const double hi = keys.back();
  if (!(hi > lo)) {
    return Profile({lo}, {seg.evaluate_v(lo, t)}).with_breaks(kinks);
  }
  for (int i = 1; i < kBaseCells; ++i) keys.push_back(lo + (hi - lo) * i / kBaseCells);
  std::sort(keys.begin(), keys.end());
  std::vector<double> base;
  for (double x : keys) {
    if (base.empty() || x - base.back() > 1e-12 * std::max(1.0, std::abs(x))) base.push_back(x);
  }

  const double tol = seg.options().tol_resample;
  std::vector<double> xs;
  std::vector<double> vs;
  xs.push_back(base.front());
  vs.push_back(seg.evaluate_v(base.front(), t));
  struct Cell {
    double a, va, b, vb;
  };
  std::vector<Cell> stack;
  for (std::size_t i = 1; i < base.size(); ++i) {
    stack.push_back({xs.back(), vs.back(), base[i], seg.evaluate_v(base[i], t)});
    while (!stack.empty()) {
      Cell c = stack.back();
      stack.pop_back();
      const double m = 0.5 * (c.a + c.b);
      const double vm = seg.evaluate_v(m, t);
      if (c.b - c.a > kMinCell && std::abs(vm - 0.5 * (c.va + c.vb)) > tol) {
        // Right half first so the left half is emitted first.
        stack.push_back({m, vm, c.b, c.vb});
        stack.push_back({c.a, c.va, m, vm});
      } else {
        xs.push_back(c.b);
        vs.push_back(c.vb);
      }
    }
  }
  return Profile(std::move(xs), std::move(vs)).with_breaks(std::move(kinks));
}

SurgeryResult annihilation_surgery(const ClassicalSegment& seg, const EventRecord& event) {
  return annihilation_surgery(seg, std::span<const EventRecord>(&event, 1));
}

SurgeryResult annihilation_surgery(const ClassicalSegment& seg,
                                   std::span<const EventRecord> events) {
  if (events.empty()) throw std::invalid_argument("surgery needs at least one event");
  const double t = seg.end_time();
  for (const auto& ev : events) {
    if (std::abs(ev.time - t) > std::max(seg.options().tol_event, time_slack(t))) {
      throw std::invalid_argument("surgery event is not the segment's terminal event");
    }
  }
  std::vector<bool> alive(seg.interface_count(), true);
  SurgeryResult out{IntervalSet{}, Profile::constant(0.0), {}, {}, {}};
  std::size_t components = seg.interface_count() / 2;
  std::vector<double> event_points;
  for (EventRecord ev : events) {
    const std::size_t l = ev.left_index - 1;
    const std::size_t r = ev.right_index - 1;
    if (r >= alive.size() || r != l + 1 || !alive[l] || !alive[r]) continue;
    alive[l] = alive[r] = false;
    ev.components_before = components;
    ev.components_after = --components;
    event_points.push_back(ev.position);
    out.events.push_back(ev);
  }

  std::vector<double> ends;
  for (std::size_t i = 0; i < alive.size(); ++i) {
    if (!alive[i]) continue;
    ends.push_back(seg.trajectories()[i].position(t));
    out.ids.push_back(seg.trajectories()[i].id());
  }
  try {
    out.omega = IntervalSet::from_endpoints(ends);
  } catch (const IntervalError& e) {
    throw SurgeryH2Failure(std::string("post-annihilation set is invalid: ") + e.what());
  }
  out.v = resample_profile(seg, t, event_points);
  const double eta = seg.options().eta > 0 ? seg.options().eta : default_margin(seg.parameters(), out.v);
  out.report = validate_initial(seg.parameters(), out.omega, out.v, eta);
  if (!out.report.accepted) {
    std::ostringstream os;
    os << "post-annihilation data at t = " << t << " fail re-validation";
    if (!out.report.issues.empty()) os << ": " << out.report.issues.front();
    throw SurgeryH2Failure(os.str());
  }
  return out;
}

WeakSolution glue(WeakSolution w, ClassicalSegment next, std::span<const EventRecord> events) {
  if (w.empty()) {
    w.push(std::move(next), events);
    return w;
  }
  const auto& prev = w.segments().back();
  const double t = prev.end_time();
  if (std::abs(next.start_time() - t) > time_slack(t)) {
    std::ostringstream os;
    os << "segment starts at " << next.start_time() << " but the solution ends at " << t;
    throw GlueMismatch(os.str());
  }

  std::set<std::size_t> removed;
  for (const auto& ev : events) {
    removed.insert(ev.left_index);
    removed.insert(ev.right_index);
  }
  std::vector<double> expected;
  std::vector<int> expected_ids;
  for (const auto& tr : prev.trajectories()) {
    if (removed.count(tr.index())) continue;
    expected.push_back(tr.position(t));
    expected_ids.push_back(tr.id());
  }
  const auto got = next.initial_set().endpoints();
  if (got.size() != expected.size()) {
    throw GlueMismatch("interface count does not match the surviving interfaces");
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (std::abs(got[i] - expected[i]) > kPositionTolerance ||
        next.trajectories()[i].id() != expected_ids[i]) {
      std::ostringstream os;
      os << "interface " << i + 1 << " starts at " << got[i] << ", expected " << expected[i];
      throw GlueMismatch(os.str());
    }
  }

  // v continuity on the new profile's samples (thinned) plus a uniform grid.
  const auto& prof = next.initial_profile();
  const auto xs = prof.abscissae();
  std::vector<double> grid;
  const std::size_t stride = std::max<std::size_t>(1, xs.size() / 2000);
  for (std::size_t i = 0; i < xs.size(); i += stride) grid.push_back(xs[i]);
  grid.push_back(xs.back());
  const double lo = xs.front() - 1.0;
  const double hi = xs.back() + 1.0;
  for (int i = 0; i <= 200; ++i) grid.push_back(lo + (hi - lo) * i / 200.0);
  for (double x : grid) {
    const double before = prev.evaluate_v(x, t);
    const double after = prof(x);
    if (std::abs(before - after) > kGlueTolerance) {
      std::ostringstream os;
      os << "v jumps across t = " << t << " at x = " << x << ": " << before << " vs " << after;
      throw GlueMismatch(os.str());
    }
  }
  w.push(std::move(next), events);
  return w;
}

WeakSolution run_weak(const Parameters& p, const IntervalSet& omega0, const Profile& v0,
                      double t_end, const SolverOptions& options) {
  WeakSolution w(p);
  IntervalSet omega = omega0;
  Profile v = v0;
  std::vector<int> ids(omega0.endpoints().size());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<EventRecord> pending;
  double t = 0.0;
  const std::size_t max_events = omega0.components();
  for (;;) {
    auto run = run_segment(p, omega, v, t, t_end, options, ids);
    w = glue(std::move(w), std::move(run.segment), pending);
    if (run.events.empty()) break;
    if (w.events().size() + run.events.size() > max_events) {
      throw StepFailure("more annihilations than initial components");
    }
    auto surgery = annihilation_surgery(w.segments().back(), run.events);
    omega = std::move(surgery.omega);
    v = std::move(surgery.v);
    ids = std::move(surgery.ids);
    pending = std::move(surgery.events);
    t = w.end_time();
  }
  return w;
}

Trace trace_of(const WeakSolution& w) {
  Trace tr;
  for (const auto& seg : w.segments()) {
    TraceFrame f{seg.start_time(), seg.end_time(), {}};
    for (const auto& t : seg.trajectories()) f.ids.push_back(t.id());
    tr.frames.push_back(std::move(f));
  }
  tr.events = w.events();
  return tr;
}

bool check_no_nucleation(const Trace& trace) {
  for (std::size_t i = 0; i < trace.frames.size(); ++i) {
    const auto& f = trace.frames[i];
    if (f.ids.size() % 2 != 0) return false;
    if (std::set<int>(f.ids.begin(), f.ids.end()).size() != f.ids.size()) return false;
    if (i == 0) continue;
    const auto& prev = trace.frames[i - 1];
    if (std::abs(prev.t_end - f.t_start) > time_slack(f.t_start)) return false;
    if (f.ids.size() > prev.ids.size()) return false;

    std::set<int> killed;
    for (const auto& ev : trace.events) {
      if (std::abs(ev.time - f.t_start) <= 1e-9 * std::max(1.0, std::abs(ev.time))) {
        killed.insert(ev.left_id);
        killed.insert(ev.right_id);
      }
    }
    // Survivors must be exactly the previous ids minus the annihilated ones,
    // in the same left-to-right order.
    std::vector<int> expected;
    for (int id : prev.ids) {
      if (!killed.count(id)) expected.push_back(id);
    }
    if (expected != f.ids) return false;
  }
  return true;
}

bool check_no_nucleation(const WeakSolution& w) { return check_no_nucleation(trace_of(w)); }

}  // namespace fronttrack
