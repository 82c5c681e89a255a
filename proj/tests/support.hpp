#pragma once

#include <cmath>
#include <random>

#include <boost/numeric/odeint.hpp>

#include "fronttrack/kinetics.hpp"

namespace testing {

inline fronttrack::Parameters pstar() { return {1.0, 1.0, 3.0, 1.0, 1.0, 2.0}; }

/// v' = g(u, v) integrated by odeint's Cash-Karp pair, independent of the
/// library's closed forms and its own integrator.
inline double reference_flow(const fronttrack::Parameters& p, double u, double v0, double t,
                             double tol = 1e-13) {
  namespace ode = boost::numeric::odeint;
  if (t == 0.0) return v0;
  double v = v0;
  auto rhs = [&](const double& y, double& dy, double) {
    dy = p.g1() * u - p.g2() * y / (p.g3() * y + p.g4());
  };
  ode::integrate_adaptive(
      ode::make_controlled<ode::runge_kutta_cash_karp54<double>>(tol, tol), rhs, v, 0.0, t,
      1e-4);
  return v;
}

/// Random parameters with g1*g3 > g2.
inline fronttrack::Parameters random_parameters(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (;;) {
    const double g1 = u(rng), g2 = u(rng), g3 = u(rng), g4 = u(rng);
    if (g1 * g3 > 1.05 * g2) return {g1, g2, g3, g4, u(rng), u(rng)};
  }
}

}  // namespace testing
