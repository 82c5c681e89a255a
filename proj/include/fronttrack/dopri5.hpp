#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace fronttrack {

class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Continuous extension of one accepted Dormand-Prince step for a single
/// component: y(t0 + s*h) = r0 + s(r1 + (1-s)(r2 + s(r3 + (1-s) r4))).
struct DenseSpan {
  double t0 = 0.0;
  double h = 0.0;
  std::array<double, 5> r{};

  double t1() const { return t0 + h; }
  double value(double t) const;
  double derivative(double t) const;
};

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct Dopri5Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  double h_min = 1e-14;
  double safety = 0.9;
  double max_growth = 5.0;
  double max_shrink = 0.2;
};

/// Explicit Runge-Kutta 5(4) pair of Dormand and Prince with the standard
/// 4th-order dense output and FSAL reuse.
class Dopri5 {
 public:
  Dopri5(std::size_t n, Dopri5Options options);

  struct Step {
    double t0;
    double h;
    std::vector<DenseSpan> dense;  // one per component
    int rejected;
  };

  /// Attempts steps from (t, y) until one is accepted. On return t and y are
  /// advanced and h holds the suggested next step size. h_max caps the
  /// attempted step; t_stop is never overshot.
  Step step(const OdeRhs& rhs, double& t, std::vector<double>& y, double& h, double h_max,
            double t_stop);

  /// Forget the cached first stage, e.g. after an external state change.
  void reset() { have_k1_ = false; }

  std::size_t accepted() const { return accepted_; }
  std::size_t rejected() const { return rejected_; }

 private:
  std::size_t n_;
  Dopri5Options opt_;
  std::array<std::vector<double>, 7> k_;
  std::vector<double> tmp_, y1_, err_;
  bool have_k1_ = false;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
};

}  // namespace fronttrack
