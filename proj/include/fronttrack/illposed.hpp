#pragma once

#include <vector>

#include "fronttrack/dopri5.hpp"
#include "fronttrack/kinetics.hpp"

namespace fronttrack {

/// One continuation of Omega(t) = {x > s(t)} from data with W(v0(0)) = 0.
/// A front carries the inside flow at the interface, a back the outside flow:
///   s'(t) = a - b * G(v0(s(t)), t).
class Continuation {
 public:
  enum class Kind { Front, Back };

  Continuation(Parameters p, Kind kind, double horizon, double tol);

  Kind kind() const { return kind_; }
  double horizon() const { return horizon_; }
  double position(double t) const;
  double velocity(double t) const;
  /// v(x,t): inside flow for x > s(t), outside flow otherwise.
  double evaluate_v(double x, double t) const;
  bool inside(double x, double t) const { return x > position(t); }
  const std::vector<DenseSpan>& spans() const { return spans_; }

 private:
  Parameters params_;
  Kind kind_;
  double horizon_;
  std::vector<DenseSpan> spans_;
};

/// v0(x) = a/b - arctan(x), clipped at 0 where it would turn negative.
double illposed_initial_profile(const Parameters& p, double x);

struct IllPosedDemo {
  Continuation front;
  Continuation back;
};

/// Both continuations from Omega(0) = (0, inf), v0 = a/b - arctan x.
IllPosedDemo ill_posedness_demo(const Parameters& p, double horizon, double tol = 1e-12);

}  // namespace fronttrack
