#include <cmath>

#include "doctest.h"
#include "fronttrack/weak.hpp"
#include "support.hpp"

using namespace fronttrack;
using testing::pstar;

TEST_SUITE("weak") {

TEST_CASE("shrinking interval: after extinction v follows the outside flow") {
  const auto p = pstar();
  const auto w = run_weak(p, IntervalSet({{-1, 1}}), Profile::constant(1.0), 1.0);
  REQUIRE(w.events().size() == 1);
  const double ta = w.events()[0].time;
  CHECK(w.segments().size() == 2);
  CHECK(w.segments().back().interface_count() == 0);
  CHECK(w.interface_positions(0.9).empty());
  CHECK(w.set_at(ta).empty());
  for (double x : {-0.7, 0.0, 0.2, 2.0}) {
    const double at_ta = w.evaluate_v(x, ta);
    CHECK(w.evaluate_v(x, 0.95) == doctest::Approx(flow_outside(p, at_ta, 0.95 - ta)).epsilon(1e-9));
  }
  // The centre stayed excited until T_A.
  CHECK(w.evaluate_v(0.0, ta) == doctest::Approx(flow_inside(p, 1.0, ta)).epsilon(1e-9));
  CHECK(check_no_nucleation(w));
}

TEST_CASE("merge of two expanding intervals") {
  const auto p = pstar();
  const auto w = run_weak(p, IntervalSet({{-3, -1}, {1, 3}}), Profile::constant(0.0), 2.0);
  REQUIRE(w.events().size() == 1);
  const auto& e = w.events()[0];
  CHECK(e.kind == EventKind::Merge);
  CHECK(e.time == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(e.position) < 1e-8);
  CHECK(e.components_before == 2);
  CHECK(e.components_after == 1);
  CHECK(e.left_id == 1);
  CHECK(e.right_id == 2);
  const auto x = w.interface_positions(1.5);
  REQUIRE(x.size() == 2);
  CHECK(x[0] == doctest::Approx(-4.5).epsilon(1e-10));
  CHECK(x[1] == doctest::Approx(4.5).epsilon(1e-10));
  CHECK(w.interface_ids(1.5) == std::vector<int>{0, 3});
  CHECK(w.interface_ids(0.5) == std::vector<int>{0, 1, 2, 3});
  // x = 0 was at rest until the merge and is excited after it.
  CHECK(w.evaluate_v(0.0, 1.5) == doctest::Approx(flow_inside(p, 0.0, 0.5)).epsilon(1e-8));
}

TEST_CASE("simultaneous extinctions are both recorded, leftmost first") {
  const auto w = run_weak(pstar(), IntervalSet({{-3, -1}, {1, 3}}), Profile::constant(1.0), 1.0);
  REQUIRE(w.events().size() == 2);
  CHECK(w.events()[0].position < w.events()[1].position);
  CHECK(w.events()[0].time == doctest::Approx(w.events()[1].time).epsilon(1e-9));
  CHECK(w.events()[0].components_before == 2);
  CHECK(w.events()[1].components_after == 0);
  CHECK(check_no_nucleation(w));
}

TEST_CASE("surgery keeps v continuous and removes one component") {
  const auto run = run_segment(pstar(), IntervalSet({{-3, -1}, {1, 3}}), Profile::constant(0.0),
                               0.0, 2.0, {});
  REQUIRE(run.events.size() == 1);
  const auto s = annihilation_surgery(run.segment, run.events[0]);
  CHECK(s.omega.components() == 1);
  CHECK(s.ids == std::vector<int>{0, 3});
  CHECK(s.report.accepted);
  const double ta = run.events[0].time;
  for (int i = 0; i <= 400; ++i) {
    const double x = -6.0 + 12.0 * i / 400.0;
    CHECK(std::abs(s.v(x) - run.segment.evaluate_v(x, ta)) <= 1e-8);
  }
}

TEST_CASE("glue checks continuity") {
  const auto p = pstar();
  WeakSolution w(p);
  auto run = run_segment(p, IntervalSet({{-1, 1}}), Profile::constant(0.0), 0.0, 1.0, {});
  w = glue(std::move(w), run.segment);
  CHECK(w.end_time() == 1.0);
  // Wrong start time.
  CHECK_THROWS_AS(glue(w, ClassicalSegment(p, IntervalSet({{-2, 2}}), Profile::constant(0.0), 0.5, {})),
                  GlueMismatch);
  // Wrong positions.
  CHECK_THROWS_AS(glue(w, ClassicalSegment(p, IntervalSet({{-2.5, 2}}), Profile::constant(0.0), 1.0, {})),
                  GlueMismatch);
  // Wrong v.
  CHECK_THROWS_AS(glue(w, ClassicalSegment(p, IntervalSet({{-2, 2}}), Profile::constant(0.1), 1.0, {})),
                  GlueMismatch);
}

TEST_CASE("nucleation is detected in corrupted traces") {
  const auto w = run_weak(pstar(), IntervalSet({{-3, -1}, {1, 3}}), Profile::constant(0.0), 2.0);
  auto trace = trace_of(w);
  CHECK(check_no_nucleation(trace));
  REQUIRE(trace.frames.size() == 2);

  auto born = trace;
  born.frames[1].ids = {0, 3, 7, 8};  // a new pair appears after the merge
  CHECK_FALSE(check_no_nucleation(born));

  auto resurrected = trace;
  resurrected.frames[1].ids = {0, 1, 2, 3};
  CHECK_FALSE(check_no_nucleation(resurrected));

  auto unexplained = trace;
  unexplained.events.clear();
  CHECK_FALSE(check_no_nucleation(unexplained));
}

TEST_CASE("empty initial set evolves by the outside flow") {
  const auto p = pstar();
  const auto w = run_weak(p, IntervalSet(), Profile({0, 1}, {2, 1}), 1.5);
  CHECK(w.events().empty());
  CHECK(w.evaluate_v(0.5, 1.5) == doctest::Approx(flow_outside(p, 1.5, 1.5)).epsilon(1e-12));
}

TEST_CASE("graded field: extinction then merge") {
  const auto p = pstar();
  const Profile v0({-8, -3, -1.5, 0, 8}, {0.2, 0.2, 1.2, 0.2, 0.2});
  const auto w = run_weak(p, IntervalSet({{-6, -4.5}, {-2, -1}, {0.5, 2}}), v0, 6.0);
  REQUIRE(w.events().size() == 2);
  CHECK(w.events()[0].kind == EventKind::Vanish);
  CHECK(w.events()[1].kind == EventKind::Merge);
  CHECK(w.events()[0].components_after == 2);
  CHECK(w.events()[1].components_after == 1);
  CHECK(check_no_nucleation(w));
}

}  // TEST_SUITE
