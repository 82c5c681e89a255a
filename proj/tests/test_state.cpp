#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "fronttrack/state.hpp"
#include "support.hpp"

using namespace fronttrack;
using testing::pstar;

TEST_SUITE("state") {

TEST_CASE("interval sets are sorted and disjoint") {
  const IntervalSet s({{1, 3}, {-3, -1}});
  REQUIRE(s.components() == 2);
  const auto e = s.endpoints();
  CHECK(std::vector<double>(e.begin(), e.end()) == std::vector<double>{-3, -1, 1, 3});
  CHECK(s.bounded());
  CHECK(s.measure_within(-10, 10) == 4.0);
  CHECK(s.measure_within(-2, 2) == 2.0);
  CHECK_THROWS_AS(IntervalSet({{0, 1}, {1, 2}}), IntervalError);      // touching
  CHECK_THROWS_AS(IntervalSet({{0, 2}, {1, 3}}), IntervalError);      // overlapping
  CHECK_THROWS_AS(IntervalSet({{1, 1}}), IntervalError);              // degenerate
  CHECK_THROWS_AS(IntervalSet::from_endpoints({0, 1, 2}), IntervalError);
  CHECK_THROWS_AS(IntervalSet::from_endpoints({0, 2, 1, 3}), IntervalError);
  CHECK(IntervalSet::from_endpoints({-1, 1}) == IntervalSet({{-1, 1}}));
  CHECK(IntervalSet().empty());
}

TEST_CASE("membership counts boundaries as outside") {
  const IntervalSet s({{-3, -1}, {1, 3}});
  CHECK(s.membership(-2).phase == Phase::Inside);
  CHECK(s.membership(-2).component == 1u);
  CHECK(s.membership(2).component == 2u);
  CHECK(s.membership(0).phase == Phase::Outside);
  CHECK_FALSE(s.membership(0).component.has_value());
  CHECK(s.membership(1).phase == Phase::Outside);
  CHECK(s.membership(3).phase == Phase::Outside);
  CHECK(component_membership(s, -1.5).component == 1u);
}

TEST_CASE("half line is unbounded") {
  const auto h = IntervalSet::half_line(0.0);
  CHECK_FALSE(h.bounded());
  CHECK(h.membership(5.0).phase == Phase::Inside);
  CHECK(h.membership(-5.0).phase == Phase::Outside);
}

TEST_CASE("profiles interpolate linearly and extend constantly") {
  const Profile f({0, 1, 3}, {1, 3, 0});
  CHECK(f(0.5) == 2.0);
  CHECK(f(2.0) == 1.5);
  CHECK(f(-7.0) == 1.0);
  CHECK(f(9.0) == 0.0);
  CHECK(eval_profile(f, 1.0) == 3.0);
  CHECK(f.bound() == 3.0);
  CHECK(f.lipschitz() == 2.0);
  CHECK(Profile::constant(0.25)(123.0) == 0.25);
  CHECK_THROWS(Profile({0, 1}, {1, -1}));
  CHECK_THROWS(Profile({1, 0}, {1, 1}));
  CHECK_THROWS(Profile({}, {}));
}

TEST_CASE("initial data validation") {
  const auto p = pstar();
  const IntervalSet s({{-1, 1}});
  auto ok = validate_initial(p, s, Profile::constant(0.0), default_margin(p, Profile::constant(0.0)));
  CHECK(ok.accepted);
  REQUIRE(ok.endpoints.size() == 2);
  CHECK(ok.endpoints[0].direction == -1);  // left front moves left
  CHECK(ok.endpoints[1].direction == +1);
  auto shrink = validate_initial(p, s, Profile::constant(1.0), 1e-6);
  CHECK(shrink.endpoints[0].direction == +1);
  CHECK(shrink.endpoints[1].direction == -1);

  const auto critical = Profile::constant(0.5);  // W = 0
  const auto bad = validate_initial(p, s, critical, default_margin(p, critical));
  CHECK_FALSE(bad.accepted);
  CHECK_THROWS_AS(require_valid(p, s, critical, default_margin(p, critical)), H2Violation);
  try {
    require_valid(p, s, critical, default_margin(p, critical));
  } catch (const H2Violation& e) {
    CHECK(e.offending().size() == 2);
  }
  CHECK_FALSE(validate_initial(p, IntervalSet::half_line(0.0), Profile::constant(0.0), 1e-6).accepted);
  CHECK(default_margin(p, Profile::constant(3.0)) == doctest::Approx(6e-6));
}

TEST_CASE("profile breaks default to the samples") {
  const Profile f({0, 1, 3}, {1, 3, 0});
  const auto b = f.breaks();
  CHECK(std::vector<double>(b.begin(), b.end()) == std::vector<double>{0, 1, 3});
  const auto g = f.with_breaks({3, 1, 3});
  const auto c = g.breaks();
  CHECK(std::vector<double>(c.begin(), c.end()) == std::vector<double>{1, 3});
  CHECK(g(2.0) == f(2.0));
  CHECK(f.with_breaks({}).breaks().empty());
}

}  // TEST_SUITE
