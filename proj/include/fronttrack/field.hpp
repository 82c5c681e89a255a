#pragma once

#include <vector>

namespace fronttrack {

class WeakSolution;

/// v sampled on the tensor grid ts x xs, row-major in time:
/// values[i * xs.size() + j] = v(xs[j], ts[i]).
struct FieldSample {
  std::vector<double> xs;
  std::vector<double> ts;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * xs.size() + j]; }
};

/// OpenMP-parallel over grid points.
FieldSample sample_field(const WeakSolution& w, std::vector<double> xs, std::vector<double> ts);
/// Serial reference of sample_field; results are bitwise identical.
FieldSample sample_field_reference(const WeakSolution& w, std::vector<double> xs,
                                   std::vector<double> ts);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace fronttrack
