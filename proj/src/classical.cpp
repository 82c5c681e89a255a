#include "fronttrack/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace fronttrack {

const char* to_string(EventKind kind) { return kind == EventKind::Merge ? "merge" : "vanish"; }

InterfaceTrajectory::InterfaceTrajectory(std::size_t index, int id, double birth, double x0,
                                         int direction, Phase ahead)
    : index_(index), id_(id), birth_(birth), x0_(x0), direction_(direction), ahead_(ahead) {}

const DenseSpan& InterfaceTrajectory::span_at(double t) const {
  // First span whose end is >= t.
  auto it = std::lower_bound(spans_.begin(), spans_.end(), t,
                             [](const DenseSpan& s, double tt) { return s.t1() < tt; });
  if (it == spans_.end()) --it;
  return *it;
}

double InterfaceTrajectory::position(double t) const {
  if (spans_.empty() || t <= birth_) return x0_;
  t = std::min(t, end_time());
  return span_at(t).value(t);
}

double InterfaceTrajectory::velocity(double t) const {
  if (spans_.empty()) return 0.0;
  t = std::clamp(t, birth_, end_time());
  return span_at(t).derivative(t);
}

std::optional<double> InterfaceTrajectory::try_arrival_time(double y) const {
  const double d = direction_;
  if (d * (y - x0_) <= 0.0) return birth_;
  const double t_end = end_time();
  if (d * (position(t_end) - y) < 0.0) return std::nullopt;

  // Spans are ordered in time and the trajectory is monotone, so the first
  // span whose end position reaches y contains the crossing.
  auto it = std::partition_point(spans_.begin(), spans_.end(), [&](const DenseSpan& s) {
    const double te = std::min(s.t1(), t_end);
    return d * (s.value(te) - y) < 0.0;
  });
  if (it == spans_.end()) return t_end;
  double lo = it->t0;
  double hi = std::min(it->t1(), t_end);
  // Safeguarded Newton on the dense polynomial.
  double t = lo + (hi - lo) * std::clamp((y - it->value(lo)) / (it->value(hi) - it->value(lo)),
                                         0.0, 1.0);
  if (!std::isfinite(t)) t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = d * (it->value(t) - y);
    if (f == 0.0) return t;
    if (f < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double df = d * it->derivative(t);
    double next = df > 0.0 ? t - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t)) || hi - lo <= 1e-15) {
      return next;
    }
    t = next;
  }
  return t;
}

double InterfaceTrajectory::arrival_time(double y) const {
  auto t = try_arrival_time(y);
  if (!t) {
    std::ostringstream os;
    os << "interface " << index_ << " does not reach " << y << " by t = " << end_time();
    throw NotReached(os.str());
  }
  return *t;
}

const PhasePiece& PointHistory::piece_at(double t) const {
  auto it = std::upper_bound(pieces.begin(), pieces.end(), t,
                             [](double tt, const PhasePiece& pc) { return tt < pc.t_start; });
  if (it != pieces.begin()) --it;
  return *it;
}

double PointHistory::value(const Parameters& p, double t) const {
  const auto& pc = piece_at(t);
  return flow(p, pc.phase, pc.v_start, std::max(0.0, t - pc.t_start));
}

std::vector<double> PointHistory::switches_within(double lo, double hi) const {
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i].t_start > lo && pieces[i].t_start < hi) out.push_back(pieces[i].t_start);
  }
  return out;
}

ClassicalSegment::ClassicalSegment(Parameters p, IntervalSet omega, Profile v, double t_a,
                                   SolverOptions options, std::vector<int> ids)
    : params_(std::move(p)),
      omega0_(std::move(omega)),
      v0_(std::move(v)),
      t_a_(t_a),
      options_(options),
      eta_(options.eta > 0 ? options.eta : default_margin(params_, v0_)),
      report_(require_valid(params_, omega0_, v0_, eta_)),
      t_(t_a),
      h_(options.h_init),
      stepper_(omega0_.endpoints().size(),
               Dopri5Options{options.tol_step, options.tol_step, 1e-14, 0.9, 5.0, 0.2}) {
  const auto ends = omega0_.endpoints();
  if (ids.empty()) {
    ids.resize(ends.size());
    std::iota(ids.begin(), ids.end(), 0);
  }
  if (ids.size() != ends.size()) {
    throw std::invalid_argument("one identity per interface is required");
  }
  traj_.reserve(ends.size());
  y_.assign(ends.begin(), ends.end());
  stats_.smallest_gap = std::numeric_limits<double>::infinity();
  stats_.min_speed = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const std::size_t k = i + 1;
    const int dir = report_.endpoints[i].direction;
    const bool right_end = (k % 2 == 0);
    const Phase ahead = (right_end == (dir > 0)) ? Phase::Outside : Phase::Inside;
    traj_.emplace_back(k, ids[i], t_a, ends[i], dir, ahead);
    stats_.min_speed = std::min(stats_.min_speed, std::abs(report_.endpoints[i].speed));
    if (i > 0) stats_.smallest_gap = std::min(stats_.smallest_gap, ends[i] - ends[i - 1]);
  }
  start_speed_.resize(traj_.size());
  for (std::size_t i = 0; i < traj_.size(); ++i) start_speed_[i] = rhs(i + 1, t_, y_);
}

void ClassicalSegment::check_time(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t_));
  if (t < t_a_ - slack || t > t_ + slack) {
    std::ostringstream os;
    os << "time " << t << " outside segment [" << t_a_ << ", " << t_ << "]";
    throw SegmentError(os.str());
  }
}

double ClassicalSegment::step_arrival(std::size_t j, double t, double y, double x) const {
  // Interface j crosses x inside the step [t_, t]. Its path there is taken as
  // the quadratic through x_j(t_) with slope start_speed_[j] that ends at y.
  const double x0 = y_[j];
  const double span = t - t_;
  const double a = start_speed_[j] * span;
  const double c = y - x0 - a;
  const double d = traj_[j].direction();
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 60 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (d * (x0 + mid * (a + mid * c) - x) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return t_ + span * 0.5 * (lo + hi);
}

double ClassicalSegment::rhs(std::size_t k, double t, std::span<const double> y) const {
  // v at x_k is rebuilt from every other interface that has already swept
  // the point, including sweeps that happen inside the current step.
  const double x = y[k - 1];
  std::vector<Crossing> crossings;
  for (std::size_t j = 0; j < traj_.size(); ++j) {
    if (j + 1 == k) continue;
    // A stage past a collision keeps the pre-collision field.
    if ((j + 1 < k) != (y[j] < x)) continue;
    const auto& tr = traj_[j];
    const double d = tr.direction();
    if (d * (x - tr.initial_position()) < 0.0) continue;
    if (d * (y[j] - x) < 0.0) continue;
    double arrival = 0.0;
    if (d * (y_[j] - x) >= 0.0) {
      arrival = tr.try_arrival_time(x).value_or(t_);
    } else {
      arrival = step_arrival(j, t, y[j], x);
    }
    crossings.push_back({arrival, tr.behind()});
  }
  const double v = compose(x, crossings).value(params_, t);
  const double w = front_speed(params_, v);
  return (k % 2 == 0) ? w : -w;
}

std::vector<double> ClassicalSegment::step_times() const {
  std::vector<double> out{t_a_};
  if (!traj_.empty()) {
    for (const auto& s : traj_.front().spans()) {
      if (s.t1() < t_) out.push_back(s.t1());
    }
  }
  if (t_ > t_a_) out.push_back(t_);
  return out;
}

PointHistory ClassicalSegment::history(double x) const { return history(x, t_); }

PointHistory ClassicalSegment::history(double x, double t_upto) const {
  return history(x, t_upto, 0);
}

PointHistory ClassicalSegment::history(double x, double t_upto, std::size_t skip) const {
  std::vector<Crossing> crossings;
  for (const auto& tr : traj_) {
    if (tr.index() == skip) continue;
    const double d = tr.direction();
    if (d * (x - tr.initial_position()) < 0.0) continue;
    if (d * (tr.position(t_upto) - x) < 0.0) continue;
    const auto t = tr.try_arrival_time(x);
    if (t && *t <= t_upto) crossings.push_back({*t, tr.behind()});
  }
  return compose(x, crossings);
}

PointHistory ClassicalSegment::compose(double x, std::vector<Crossing>& crossings) const {
  std::sort(crossings.begin(), crossings.end(),
            [](const Crossing& l, const Crossing& r) { return l.t < r.t; });
  PointHistory h;
  h.x = x;
  h.pieces.push_back({t_a_, omega0_.membership(x).phase, v0_(x)});
  for (const auto& c : crossings) {
    const auto& last = h.pieces.back();
    const double v = flow(params_, last.phase, last.v_start, std::max(0.0, c.t - last.t_start));
    if (c.t <= last.t_start) {
      h.pieces.back() = {last.t_start, c.phase, last.v_start};
    } else {
      h.pieces.push_back({c.t, c.phase, v});
    }
  }
  return h;
}

double ClassicalSegment::evaluate_v(double x, double t) const {
  check_time(t);
  t = std::clamp(t, t_a_, t_);
  return history(x, t).value(params_, t);
}

double ClassicalSegment::interface_velocity(std::size_t k, double t) const {
  check_time(t);
  const double x = traj_.at(k - 1).position(t);
  t = std::clamp(t, t_a_, t_);
  const double w = front_speed(params_, history(x, t, k).value(params_, t));
  return (k % 2 == 0) ? w : -w;
}

std::vector<double> ClassicalSegment::positions(double t) const {
  std::vector<double> out;
  out.reserve(traj_.size());
  for (const auto& tr : traj_) out.push_back(tr.position(t));
  return out;
}

IntervalSet ClassicalSegment::set_at(double t) const {
  check_time(t);
  return IntervalSet::from_endpoints(positions(t));
}

void ClassicalSegment::advance(double dt_max, double t_stop) {
  if (ended_) throw SegmentError("advance on a closed segment");
  if (traj_.empty()) throw SegmentError("advance on a segment without interfaces");
  for (std::size_t i = 0; i < traj_.size(); ++i) start_speed_[i] = rhs(i + 1, t_, y_);
  const OdeRhs f = [this](double t, std::span<const double> y, std::span<double> dy) {
    for (std::size_t i = 0; i < y.size(); ++i) dy[i] = rhs(i + 1, t, y);
  };
  const double cap = std::min(dt_max, options_.dt_max);
  prev_t_ = t_;
  prev_y_ = y_;
  prev_h_ = h_;
  auto step = stepper_.step(f, t_, y_, h_, cap, t_stop);
  can_rollback_ = true;
  for (std::size_t i = 0; i < traj_.size(); ++i) traj_[i].append(step.dense[i]);
  ++stats_.steps;
  stats_.rejected += static_cast<std::size_t>(step.rejected);

  for (std::size_t i = 0; i < traj_.size(); ++i) {
    const double speed = std::abs(step.dense[i].derivative(t_));
    if (speed < stats_.min_speed) stats_.min_speed = speed;
    if (speed < eta_ && stats_.warnings.empty()) {
      std::ostringstream os;
      os << "degeneracy: |W(v(x_" << i + 1 << "))| = " << speed << " < " << eta_
         << " at t = " << t_;
      stats_.warnings.push_back(os.str());
    }
    if (i > 0 && y_[i] - y_[i - 1] > 0) {
      stats_.smallest_gap = std::min(stats_.smallest_gap, y_[i] - y_[i - 1]);
    }
  }
}

std::optional<double> ClassicalSegment::first_kink_crossing() const {
  if (!can_rollback_) return std::nullopt;
  std::vector<double> kinks(v0_.breaks().begin(), v0_.breaks().end());
  for (const auto& tr : traj_) kinks.push_back(tr.initial_position());
  std::optional<double> first;
  for (std::size_t i = 0; i < traj_.size(); ++i) {
    const double lo = std::min(prev_y_[i], y_[i]);
    const double hi = std::max(prev_y_[i], y_[i]);
    for (double b : kinks) {
      if (!(b > lo && b < hi)) continue;
      const auto t = traj_[i].try_arrival_time(b);
      if (t && (!first || *t < *first)) first = *t;
    }
  }
  return first;
}

void ClassicalSegment::rollback() {
  if (ended_ || !can_rollback_) throw SegmentError("nothing to roll back");
  for (auto& tr : traj_) tr.drop_last();
  t_ = prev_t_;
  y_ = prev_y_;
  h_ = prev_h_;
  stepper_.reset();
  --stats_.steps;
  can_rollback_ = false;
}

std::vector<EventRecord> ClassicalSegment::locate_event() const {
  std::vector<EventRecord> found;
  if (traj_.size() < 2 || traj_.front().spans().empty()) return found;
  const double t0 = traj_.front().spans().back().t0;
  const double t1 = t_;
  for (std::size_t i = 1; i < traj_.size(); ++i) {
    const auto& l = traj_[i - 1];
    const auto& r = traj_[i];
    auto gap = [&](double t) { return r.position(t) - l.position(t); };
    if (gap(t1) > 0.0) continue;
    double lo = t0;
    double hi = t1;
    while (hi - lo > options_.tol_event) {
      const double mid = 0.5 * (lo + hi);
      if (gap(mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double te = 0.5 * (lo + hi);
    EventRecord ev;
    ev.time = te;
    ev.kind = (i % 2 == 1) ? EventKind::Vanish : EventKind::Merge;
    ev.left_index = i;
    ev.right_index = i + 1;
    ev.left_id = l.id();
    ev.right_id = r.id();
    ev.position = 0.5 * (l.position(te) + r.position(te));
    ev.components_before = traj_.size() / 2;
    ev.components_after = traj_.size() / 2 - 1;
    found.push_back(ev);
  }
  if (found.empty()) return found;
  std::sort(found.begin(), found.end(), [](const EventRecord& a, const EventRecord& b) {
    return a.time < b.time || (a.time == b.time && a.position < b.position);
  });
  const double first = found.front().time;
  std::erase_if(found, [&](const EventRecord& e) { return e.time - first > options_.tol_event; });
  // Ties within tol_event: leftmost first.
  std::stable_sort(found.begin(), found.end(), [](const EventRecord& a, const EventRecord& b) {
    return a.position < b.position;
  });
  return found;
}

void ClassicalSegment::close(double t_b) {
  const bool beyond = t_b > t_ + 1e-12 * std::max(1.0, std::abs(t_));
  if (t_b < t_a_ || (beyond && !traj_.empty())) {
    throw SegmentError("close time outside the integrated range");
  }
  t_ = t_b;
  for (auto& tr : traj_) {
    if (!tr.death()) tr.set_death(t_b);
  }
  ended_ = true;
}

SegmentRun run_segment(const Parameters& p, const IntervalSet& omega, const Profile& v,
                       double t_a, double t_end, const SolverOptions& options,
                       std::vector<int> ids) {
  SegmentRun run{ClassicalSegment(p, omega, v, t_a, options, std::move(ids)), {}};
  auto& seg = run.segment;
  if (seg.interface_count() == 0) {
    seg.close(t_end);
    return run;
  }
  // A long step across a collision extrapolates the field past the event,
  // so such steps are retaken with a smaller cap until they are short.
  const double short_step = std::sqrt(options.tol_step);
  const double kink_slack = 1e-2 * short_step;
  double cap = options.dt_max;
  while (seg.end_time() < t_end) {
    const double t0 = seg.end_time();
    seg.advance(cap, t_end);
    auto events = seg.locate_event();
    if (events.empty()) {
      // The right-hand side is only Lipschitz across kinks of the data; land
      // the step on the first one instead of stepping over it.
      const auto kink = seg.first_kink_crossing();
      if (kink && seg.end_time() - *kink > kink_slack && *kink > t0 + kink_slack) {
        seg.rollback();
        seg.advance(cap, *kink);
      }
      continue;
    }
    const double h = seg.end_time() - t0;
    if (h > short_step) {
      seg.rollback();
      cap = h / 8.0;
      continue;
    }
    seg.close(events.front().time);
    run.events = std::move(events);
    return run;
  }
  seg.close(seg.end_time());
  return run;
}

}  // namespace fronttrack
