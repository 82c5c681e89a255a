#pragma once

#include <array>
#include <functional>

#include "fronttrack/weak.hpp"

namespace fronttrack {

/// Space-time rectangle (x_lo, x_hi) x (t_lo, t_hi).
struct Window {
  double x_lo;
  double x_hi;
  double t_lo;
  double t_hi;
};

struct TestFunction {
  std::function<double(double x, double t)> value;
  std::function<double(double x, double t)> dt;
};

TestFunction constant_test_function(double c);

/// sum_{i,j<=3} c[i][j] * X^i * T^j with X, T the window coordinates mapped to [-1, 1].
TestFunction polynomial_test_function(const Window& w, const std::array<std::array<double, 4>, 4>& c);

struct ResidualPair {
  // Interface identity: [int phi 1_Omega dx] = int int_Omega phi_t + sum_k int W(v(x_k)) phi(x_k) dt
  double interface_lhs = 0.0;
  double interface_rhs = 0.0;
  // Field identity: [int v psi dx] = int int (v psi_t + g(1_Omega, v) psi)
  double field_lhs = 0.0;
  double field_rhs = 0.0;

  double interface_residual() const;
  double field_residual() const;
};

struct ResidualOptions {
  int x_panels = 32;        // composite panels per window in space
  double max_time_panel = 0.02;  // upper bound on a time panel, on top of step nodes
};

/// Both sides of the two integral identities over a window. The boundary
/// integral over the interface graphs is taken as sum_k int W(v(x_k(t),t)) phi dt
/// over the times at which x_k lies inside the window.
ResidualPair weak_residual(const WeakSolution& w, const Window& window, const TestFunction& phi,
                           const TestFunction& psi, const ResidualOptions& options = {});

}  // namespace fronttrack
