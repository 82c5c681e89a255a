#include "fronttrack/field.hpp"

#include <stdexcept>

#include "fronttrack/weak.hpp"

namespace fronttrack {

FieldSample sample_field(const WeakSolution& w, std::vector<double> xs, std::vector<double> ts) {
  FieldSample out{std::move(xs), std::move(ts), {}};
  const std::size_t nx = out.xs.size();
  const auto total = static_cast<long long>(nx * out.ts.size());
  out.values.assign(static_cast<std::size_t>(total), 0.0);
  // Exceptions may not cross the parallel region, so remember the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
  for (long long k = 0; k < total; ++k) {
    const auto i = static_cast<std::size_t>(k) / nx;
    const auto j = static_cast<std::size_t>(k) % nx;
    try {
      out.values[static_cast<std::size_t>(k)] = w.evaluate_v(out.xs[j], out.ts[i]);
    } catch (...) {
#pragma omp critical(fronttrack_field_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

FieldSample sample_field_reference(const WeakSolution& w, std::vector<double> xs,
                                   std::vector<double> ts) {
  FieldSample out{std::move(xs), std::move(ts), {}};
  out.values.reserve(out.xs.size() * out.ts.size());
  for (double t : out.ts) {
    for (double x : out.xs) out.values.push_back(w.evaluate_v(x, t));
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

}  // namespace fronttrack
