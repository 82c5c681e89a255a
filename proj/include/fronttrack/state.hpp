#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fronttrack/kinetics.hpp"

namespace fronttrack {

class IntervalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Interval {
  double left;
  double right;
};

struct Membership {
  Phase phase = Phase::Outside;
  /// 1-based component index j, so that x lies in (x_{2j-1}, x_{2j}).
  std::optional<std::size_t> component;
};

/// Finite union of disjoint open intervals, stored as 2m strictly increasing
/// endpoints x_1 < x_2 < ... < x_{2m}. Endpoint k is a left end when k is odd.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Sorts by left end and rejects empty, touching or overlapping intervals.
  explicit IntervalSet(std::vector<Interval> intervals);

  static IntervalSet from_endpoints(std::vector<double> endpoints);

  /// (left, +inf). Only meaningful for the ill-posedness construction;
  /// validate_initial rejects it.
  static IntervalSet half_line(double left);

  std::size_t components() const { return endpoints_.size() / 2; }
  bool empty() const { return endpoints_.empty(); }
  bool bounded() const;
  std::span<const double> endpoints() const { return endpoints_; }
  Interval component(std::size_t j) const;  // 0-based

  Membership membership(double x) const;

  /// Lebesgue measure of the set intersected with (lo, hi).
  double measure_within(double lo, double hi) const;

  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<double> endpoints_;
};

Membership component_membership(const IntervalSet& omega, double x);

/// Piecewise-linear non-negative profile with constant extension beyond the
/// first and last samples.
class Profile {
 public:
  Profile(std::vector<double> xs, std::vector<double> values);

  static Profile constant(double value);

  double operator()(double x) const;

  std::span<const double> abscissae() const { return xs_; }
  std::span<const double> values() const { return vs_; }
  std::size_t size() const { return xs_.size(); }

  /// Largest sampled value, i.e. the sup norm.
  double bound() const { return bound_; }
  /// Largest slope between neighbouring samples.
  double lipschitz() const { return lipschitz_; }

  /// Points where the profile may fail to be smooth: every sample, unless a
  /// narrower sorted list was attached with with_breaks.
  std::span<const double> breaks() const { return has_breaks_ ? breaks_ : xs_; }
  Profile with_breaks(std::vector<double> points) const;

 private:
  std::vector<double> xs_;
  std::vector<double> vs_;
  std::vector<double> breaks_;
  bool has_breaks_ = false;
  double bound_ = 0.0;
  double lipschitz_ = 0.0;
};

double eval_profile(const Profile& f, double x);

struct EndpointReport {
  std::size_t index;  // 1-based k
  double x;
  double v;
  double speed;      // W(v0(x_k))
  int direction;     // sign of (-1)^k W, i.e. the initial sign of x_k'
};

struct ValidationReport {
  bool accepted = true;
  std::vector<EndpointReport> endpoints;
  std::vector<std::string> issues;
};

/// Raised when W(v0) vanishes (up to the margin) at some initial endpoint.
class H2Violation : public std::runtime_error {
 public:
  H2Violation(const std::string& what, std::vector<EndpointReport> offending)
      : std::runtime_error(what), offending_(std::move(offending)) {}
  const std::vector<EndpointReport>& offending() const { return offending_; }

 private:
  std::vector<EndpointReport> offending_;
};

/// Default degeneracy margin 1e-6 * max(a, b*M).
double default_margin(const Parameters& p, const Profile& v0);

/// Checks boundedness of the excited set and |W(v0(x_k))| >= eta at every
/// endpoint. Never throws; see require_valid().
ValidationReport validate_initial(const Parameters& p, const IntervalSet& omega,
                                  const Profile& v0, double eta);

/// validate_initial() that throws H2Violation (or IntervalError for an
/// unbounded set) when the data are rejected.
ValidationReport require_valid(const Parameters& p, const IntervalSet& omega,
                               const Profile& v0, double eta);

}  // namespace fronttrack
