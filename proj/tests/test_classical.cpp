#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fronttrack/classical.hpp"
#include "support.hpp"

using namespace fronttrack;
using testing::pstar;

namespace {

SegmentRun expanding() {
  return run_segment(pstar(), IntervalSet({{-1, 1}}), Profile::constant(0.0), 0.0, 2.0, {});
}

SegmentRun shrinking() {
  return run_segment(pstar(), IntervalSet({{-1, 1}}), Profile::constant(1.0), 0.0, 1.0, {});
}

}  // namespace

TEST_SUITE("classical") {

TEST_CASE("expanding interval moves at constant speed") {
  const auto run = expanding();
  CHECK(run.events.empty());
  const auto& seg = run.segment;
  CHECK(seg.end_time() == 2.0);
  for (double t : {0.0, 0.3, 1.1, 2.0}) {
    const auto x = seg.positions(t);
    CHECK(x[0] == doctest::Approx(-1 - t).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(1 + t).epsilon(1e-12));
  }
  CHECK(seg.interface_velocity(2, 0.7) == doctest::Approx(1.0));
  CHECK(seg.interface_velocity(1, 0.7) == doctest::Approx(-1.0));
  CHECK(seg.trajectory(1).direction() == -1);
  CHECK(seg.trajectory(2).ahead() == Phase::Outside);
}

TEST_CASE("arrival times invert the trajectories") {
  const auto run = expanding();
  const auto& tr = run.segment.trajectory(2);
  CHECK(tr.arrival_time(1.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tr.try_arrival_time(0.5) == 0.0);  // already behind the start
  CHECK_FALSE(tr.try_arrival_time(10.0).has_value());
  CHECK_THROWS_AS(tr.arrival_time(10.0), NotReached);
  for (double t : {0.1, 0.77, 1.9}) {
    CHECK(tr.arrival_time(tr.position(t)) == doctest::Approx(t).epsilon(1e-10));
  }
}

TEST_CASE("v is rebuilt from arrival times") {
  const auto run = expanding();
  // Reference: the front reaches 1.5 at t = 0.5, then the inside flow acts.
  CHECK(run.segment.evaluate_v(1.5, 2.0) == doctest::Approx(1.204392670473038).epsilon(1e-10));
  CHECK(run.segment.evaluate_v(5.0, 2.0) == 0.0);
  const auto h = run.segment.history(1.5);
  REQUIRE(h.pieces.size() == 2);
  CHECK(h.pieces[0].phase == Phase::Outside);
  CHECK(h.pieces[1].phase == Phase::Inside);
  CHECK(h.pieces[1].t_start == doctest::Approx(0.5));
  CHECK(h.switches_within(0.0, 2.0).size() == 1);
  CHECK(h.switches_within(0.6, 2.0).empty());
}

TEST_CASE("shrinking interval vanishes at the quadrature time") {
  const auto run = shrinking();
  REQUIRE(run.events.size() == 1);
  const auto& e = run.events[0];
  CHECK(e.kind == EventKind::Vanish);
  CHECK(e.left_index == 1);
  CHECK(e.right_index == 2);
  CHECK(e.time == doctest::Approx(0.6686264660157551).epsilon(1e-9));
  CHECK(std::abs(e.position) < 1e-9);
  CHECK(run.segment.end_time() == e.time);
  CHECK(run.segment.trajectory(2).arrival_time(0.9) ==
        doctest::Approx(0.0934611709044939).epsilon(1e-9));
  CHECK(run.segment.evaluate_v(0.9, 0.5) == doctest::Approx(0.9678123831383676).epsilon(1e-9));
  CHECK_THROWS_AS(run.segment.evaluate_v(0.0, 0.9), SegmentError);
}

TEST_CASE("rhs follows the sign convention") {
  const ClassicalSegment seg(pstar(), IntervalSet({{-1, 1}}), Profile::constant(0.0), 0.0, {});
  const std::vector<double> y{-1.0, 1.0};
  CHECK(seg.rhs(1, 0.0, y) == doctest::Approx(-1.0));
  CHECK(seg.rhs(2, 0.0, y) == doctest::Approx(1.0));
}

TEST_CASE("rhs sees a sweep that happens inside the current step") {
  // Right-moving pulse: at a stage the front has already passed the back's
  // position, so the back must see the inside phase left behind.
  const auto p = pstar();
  const Profile v0({-1.0, 0.0, 0.01, 1.0}, {0.8, 0.8, 0.2, 0.2});
  const ClassicalSegment seg(p, IntervalSet({{0.0, 0.01}}), v0, 0.0, {});
  const double t = 0.05;
  const std::vector<double> y{0.02, 0.05};
  // Front path through the step: 0.01 + 0.03 s + 0.01 s^2 reaches 0.02 here.
  const double arrival = t * (std::sqrt(13.0) - 3.0) / 2.0;
  const double v = flow_inside(p, flow_outside(p, 0.2, arrival), t - arrival);
  CHECK(-seg.rhs(1, t, y) == doctest::Approx(front_speed(p, v)).epsilon(1e-12));
  CHECK(seg.rhs(2, t, y) == doctest::Approx(front_speed(p, flow_outside(p, 0.2, t))).epsilon(1e-12));
}

TEST_CASE("degenerate initial data is refused") {
  CHECK_THROWS_AS(ClassicalSegment(pstar(), IntervalSet({{-1, 1}}), Profile::constant(0.5), 0.0, {}),
                  H2Violation);
}

TEST_CASE("set_at follows the interfaces") {
  const auto run = expanding();
  const auto set = run.segment.set_at(1.0);
  const auto ends = set.endpoints();
  REQUIRE(ends.size() == 2);
  CHECK(ends[0] == doctest::Approx(-2.0));
  CHECK(ends[1] == doctest::Approx(2.0));
  CHECK(run.segment.set_at(0.5).membership(1.4).phase == Phase::Inside);
}

TEST_CASE("rollback undoes exactly one step") {
  ClassicalSegment seg(pstar(), IntervalSet({{-1, 1}}), Profile::constant(0.0), 0.0, {});
  seg.advance(0.1);
  const double t1 = seg.end_time();
  const auto x1 = seg.positions(t1);
  seg.advance(0.1);
  CHECK(seg.end_time() > t1);
  seg.rollback();
  CHECK(seg.end_time() == t1);
  CHECK(seg.trajectory(1).spans().size() == 1);
  CHECK(seg.positions(t1) == x1);
  CHECK_THROWS_AS(seg.rollback(), SegmentError);
  seg.advance(0.1);
  CHECK(seg.positions(seg.end_time())[1] == doctest::Approx(1.0 + seg.end_time()).epsilon(1e-12));
}

TEST_CASE("steps land on kinks of the initial profile") {
  // v0 bends at x = 0.5; the right front reaches it part way through the run.
  const Profile v0({0.5, 3.0}, {0.2, 0.45});
  const auto run = run_segment(pstar(), IntervalSet({{-1.0, 0.2}}), v0, 0.0, 1.0, {});
  const auto& tr = run.segment.trajectory(2);
  const double t_kink = tr.arrival_time(0.5);
  REQUIRE(t_kink > 0.0);
  REQUIRE(t_kink < 1.0);
  double nearest = 1.0;
  for (const auto& s : tr.spans()) nearest = std::min(nearest, std::abs(s.t1() - t_kink));
  CHECK(nearest <= 1e-7);
}

}  // TEST_SUITE
