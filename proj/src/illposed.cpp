#include "fronttrack/illposed.hpp"

#include <algorithm>
#include <cmath>

namespace fronttrack {

double illposed_initial_profile(const Parameters& p, double x) {
  return std::max(0.0, p.critical_level() - std::atan(x));
}

Continuation::Continuation(Parameters p, Kind kind, double horizon, double tol)
    : params_(std::move(p)), kind_(kind), horizon_(horizon) {
  const Phase phase = kind == Kind::Front ? Phase::Inside : Phase::Outside;
  const OdeRhs rhs = [&](double t, std::span<const double> y, std::span<double> dy) {
    const double v = flow(params_, phase, illposed_initial_profile(params_, y[0]), t);
    dy[0] = front_speed(params_, v);
  };
  Dopri5 stepper(1, Dopri5Options{tol, tol, 1e-14, 0.9, 5.0, 0.2});
  double t = 0.0;
  double h = 1e-4;
  std::vector<double> y{0.0};
  while (t < horizon) {
    auto step = stepper.step(rhs, t, y, h, horizon / 50.0, horizon);
    spans_.push_back(step.dense[0]);
  }
}

double Continuation::position(double t) const {
  if (spans_.empty() || t <= 0.0) return 0.0;
  t = std::min(t, horizon_);
  auto it = std::lower_bound(spans_.begin(), spans_.end(), t,
                             [](const DenseSpan& s, double tt) { return s.t1() < tt; });
  if (it == spans_.end()) --it;
  return it->value(t);
}

double Continuation::velocity(double t) const {
  if (spans_.empty()) return 0.0;
  t = std::clamp(t, 0.0, horizon_);
  auto it = std::lower_bound(spans_.begin(), spans_.end(), t,
                             [](const DenseSpan& s, double tt) { return s.t1() < tt; });
  if (it == spans_.end()) --it;
  return it->derivative(t);
}

double Continuation::evaluate_v(double x, double t) const {
  const double v0 = illposed_initial_profile(params_, x);
  return inside(x, t) ? flow_inside(params_, v0, t) : flow_outside(params_, v0, t);
}

IllPosedDemo ill_posedness_demo(const Parameters& p, double horizon, double tol) {
  return {Continuation(p, Continuation::Kind::Front, horizon, tol),
          Continuation(p, Continuation::Kind::Back, horizon, tol)};
}

}  // namespace fronttrack
