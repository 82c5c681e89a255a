#pragma once

#include <stdexcept>
#include <string>

namespace fronttrack {

/// Value of the indicator of the excited set that enters the recovery kinetics.
enum class Phase { Outside = 0, Inside = 1 };

inline constexpr Phase opposite(Phase p) {
  return p == Phase::Inside ? Phase::Outside : Phase::Inside;
}

inline constexpr double indicator(Phase p) { return p == Phase::Inside ? 1.0 : 0.0; }

const char* to_string(Phase p);

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a scalar inversion fails to converge. Indicates a bug, not bad input.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Kinetic constants of g(u,v) = g1*u - g2*v/(g3*v+g4), the wave-speed law
/// W(v) = a - b*v and the reference level M of the outside antiderivative.
///
/// Construction rejects non-positive constants and g1*g3 <= g2. The stronger
/// condition g1*g3 > 2*g2 is only recorded (see strong_assumption()).
class Parameters {
 public:
  Parameters(double g1, double g2, double g3, double g4, double a, double b,
             double reference_level = 1.0);

  double g1() const { return g1_; }
  double g2() const { return g2_; }
  double g3() const { return g3_; }
  double g4() const { return g4_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double reference_level() const { return reference_; }

  /// True when g1*g3 > 2*g2.
  bool strong_assumption() const { return strong_; }

  /// The unique zero a/b of W.
  double critical_level() const { return a_ / b_; }

  /// Lower bound of g(1,v) over v >= 0: g1 - g2/g3 > 0.
  double inside_rate_floor() const { return g1_ - g2_ / g3_; }

  /// Same constants with a different reference level M.
  Parameters with_reference_level(double m) const;

 private:
  double g1_, g2_, g3_, g4_, a_, b_, reference_;
  bool strong_;
};

/// Returns a human readable warning when only the weak condition g1*g3 > g2 holds.
std::string assumption_warning(const Parameters& p);

double reaction_rate(const Parameters& p, Phase phase, double v);

/// W(v) = a - b v. Defined for every real v; no upper bound on v is assumed.
double front_speed(const Parameters& p, double v);

/// Integral of 1/g(0,xi) from M to v, v > 0.
double antiderivative_outside(const Parameters& p, double v);

/// Integral of 1/g(1,xi) from 0 to v, v >= 0.
double antiderivative_inside(const Parameters& p, double v);

/// Exact solution at time t of v' = g(0,v), v(0) = v0.
double flow_outside(const Parameters& p, double v0, double t);

/// Exact solution at time t of v' = g(1,v), v(0) = v0.
double flow_inside(const Parameters& p, double v0, double t);

double flow(const Parameters& p, Phase phase, double v0, double t);

}  // namespace fronttrack
