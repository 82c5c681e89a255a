#include "doctest.h"
#include "fronttrack/field.hpp"
#include "fronttrack/weak.hpp"
#include "support.hpp"

using namespace fronttrack;

TEST_SUITE("field") {

TEST_CASE("linspace includes both ends") {
  const auto x = linspace(-1.0, 2.0, 4);
  CHECK(x == std::vector<double>{-1.0, 0.0, 1.0, 2.0});
  CHECK(linspace(0, 1, 1) == std::vector<double>{0.0});
  CHECK(linspace(0, 1, 0).empty());
}

TEST_CASE("parallel sampling equals the serial reference bitwise") {
  const auto w = run_weak(testing::pstar(), IntervalSet({{-3, -1}, {1, 3}}), Profile::constant(0.2), 2.0);
  const auto xs = linspace(-6, 6, 121);
  const auto ts = linspace(0, 2, 21);
  const auto a = sample_field(w, xs, ts);
  const auto b = sample_field_reference(w, xs, ts);
  CHECK(a.values == b.values);
  CHECK(a.at(3, 7) == w.evaluate_v(xs[7], ts[3]));
}

TEST_CASE("sampling outside the solved interval propagates the error") {
  const auto w = run_weak(testing::pstar(), IntervalSet({{-1, 1}}), Profile::constant(0.0), 1.0);
  CHECK_THROWS(sample_field(w, {0.0}, {5.0}));
}

}  // TEST_SUITE
