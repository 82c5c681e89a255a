#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fronttrack/kinetics.hpp"
#include "support.hpp"

using namespace fronttrack;
using testing::pstar;
using testing::reference_flow;

TEST_SUITE("kinetics") {

TEST_CASE("reaction rate and front speed") {
  const auto p = pstar();
  CHECK(reaction_rate(p, Phase::Outside, 0.0) == 0.0);
  CHECK(reaction_rate(p, Phase::Inside, 0.0) == doctest::Approx(1.0));
  CHECK(reaction_rate(p, Phase::Outside, 1.0) == doctest::Approx(-0.25));
  CHECK(front_speed(p, 0.0) == 1.0);
  CHECK(front_speed(p, 0.5) == 0.0);
  CHECK(front_speed(p, 3.0) == -5.0);
  CHECK(p.critical_level() == 0.5);
  CHECK_THROWS_AS(reaction_rate(p, Phase::Inside, -1e-3), DomainError);
}

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS(Parameters(0, 1, 3, 1, 1, 2), ParameterError);
  CHECK_THROWS_AS(Parameters(1, 1, 3, 1, -1, 2), ParameterError);
  CHECK_THROWS_AS(Parameters(1, 1, 1, 1, 1, 2), ParameterError);  // g1*g3 == g2
  CHECK_THROWS_AS(Parameters(1, 1, 3, 1, 1, 2, 0.0), ParameterError);
  CHECK(Parameters(1, 1, 3, 1, 1, 2).strong_assumption());
  const Parameters weak(1, 1, 1.5, 1, 1, 2);
  CHECK_FALSE(weak.strong_assumption());
  CHECK(assumption_warning(weak).find("assumption (A) g1*g3>2*g2 not satisfied") == 0);
  CHECK(assumption_warning(pstar()).empty());
}

TEST_CASE("antiderivatives match quadrature values") {
  const auto p = pstar();
  CHECK(antiderivative_outside(p, 1.0) == 0.0);
  CHECK(antiderivative_outside(p, 0.5) == doctest::Approx(2.1931471805599454).epsilon(1e-14));
  CHECK(antiderivative_inside(p, 0.0) == 0.0);
  CHECK(antiderivative_inside(p, 1.0) == doctest::Approx(1.2253469278329725).epsilon(1e-14));
  CHECK_THROWS_AS(antiderivative_outside(p, 0.0), DomainError);
}

TEST_CASE("flows match independently integrated values") {
  const auto p = pstar();
  CHECK(flow_outside(p, 1.0, 1.0) == doctest::Approx(0.7587113099237016).epsilon(1e-12));
  CHECK(flow_inside(p, 0.0, 0.1) == doctest::Approx(0.0959149863538656).epsilon(1e-12));
  CHECK(flow_inside(p, 0.0, 0.5) == doctest::Approx(0.43823142335871584).epsilon(1e-12));

  const Parameters q(2.0, 1.0, 1.5, 0.5, 1.0, 1.0);
  CHECK(flow_outside(q, 3.0, 2.0) == doctest::Approx(1.8312115053570948).epsilon(1e-12));
  CHECK(flow_inside(q, 0.2, 4.0) == doctest::Approx(5.902219957075445).epsilon(1e-12));
  CHECK(flow_outside(q, 1e-3, 7.0) == doctest::Approx(8.340270638162427e-10).epsilon(1e-10));
}

TEST_CASE("flows at the edges") {
  const auto p = pstar();
  CHECK(flow_outside(p, 0.0, 5.0) == 0.0);
  CHECK(flow_outside(p, 0.7, 0.0) == 0.7);
  CHECK(flow_inside(p, 0.7, 0.0) == 0.7);
  CHECK(flow(p, Phase::Inside, 0.3, 0.2) == flow_inside(p, 0.3, 0.2));
  CHECK(flow(p, Phase::Outside, 0.3, 0.2) == flow_outside(p, 0.3, 0.2));
  // Long times: the outside flow decays like exp(-g2 t / g4).
  const double late = flow_outside(p, 1.0, 200.0);
  CHECK(late > 0.0);
  CHECK(late < 1e-80);
  CHECK(flow_outside(p, 1e-300, 1.0) > 0.0);
  CHECK_THROWS_AS(flow_outside(p, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(flow_inside(p, 1.0, -1.0), DomainError);
}

TEST_CASE("flows agree with adaptive integration over random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> v0d(0.0, 5.0), td(0.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    const auto p = testing::random_parameters(rng);
    const double v0 = v0d(rng), t = td(rng);
    CHECK(std::abs(flow_outside(p, v0, t) - reference_flow(p, 0.0, v0, t)) <= 1e-9);
    CHECK(std::abs(flow_inside(p, v0, t) - reference_flow(p, 1.0, v0, t)) <= 1e-9);
  }
}

TEST_CASE("semigroup property") {
  const auto p = pstar();
  for (double s : {0.1, 0.7, 2.0}) {
    for (double v0 : {0.0, 0.4, 3.0}) {
      CHECK(flow_inside(p, flow_inside(p, v0, s), 1.3) ==
            doctest::Approx(flow_inside(p, v0, s + 1.3)).epsilon(1e-11));
      CHECK(flow_outside(p, flow_outside(p, v0, s), 1.3) ==
            doctest::Approx(flow_outside(p, v0, s + 1.3)).epsilon(1e-11));
    }
  }
}

TEST_CASE("reference level does not change the flows") {
  const auto p = pstar();
  const auto q = p.with_reference_level(4.0);
  CHECK(flow_outside(q, 2.0, 1.5) == doctest::Approx(flow_outside(p, 2.0, 1.5)).epsilon(1e-12));
  CHECK(antiderivative_outside(q, 4.0) == 0.0);
}

TEST_CASE("flows are smooth in t down to rounding") {
  // Third differences of a smooth function at spacing 1e-6 are ~1e-18; a
  // root finder stopping early shows up as noise around 1e-12.
  const auto p = pstar();
  double worst = 0.0;
  const double h = 1e-6;
  for (int i = 0; i < 2000; ++i) {
    const double t = 0.05 + 5e-4 * i;
    for (Phase ph : {Phase::Inside, Phase::Outside}) {
      auto f = [&](double s) { return flow(p, ph, 1.0, s); };
      worst = std::max(worst, std::abs(f(t + 3 * h) - 3 * f(t + 2 * h) + 3 * f(t + h) - f(t)));
    }
  }
  CHECK(worst <= 1e-14);
}

}  // TEST_SUITE
