#include "fronttrack/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fronttrack {

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& l, const Interval& r) { return l.left < r.left; });
  endpoints_.reserve(2 * intervals.size());
  for (std::size_t j = 0; j < intervals.size(); ++j) {
    const auto& iv = intervals[j];
    if (std::isnan(iv.left) || std::isnan(iv.right) || std::isinf(iv.left)) {
      throw IntervalError("interval endpoints must be numbers with a finite left end");
    }
    if (!(iv.left < iv.right)) {
      std::ostringstream os;
      os << "degenerate interval (" << iv.left << ", " << iv.right << ")";
      throw IntervalError(os.str());
    }
    if (!endpoints_.empty() && !(endpoints_.back() < iv.left)) {
      std::ostringstream os;
      os << "intervals not disjoint: right end " << endpoints_.back()
         << " is not below left end " << iv.left;
      throw IntervalError(os.str());
    }
    if (std::isinf(iv.right) && j + 1 != intervals.size()) {
      throw IntervalError("only the last interval may be unbounded");
    }
    endpoints_.push_back(iv.left);
    endpoints_.push_back(iv.right);
  }
}

IntervalSet IntervalSet::from_endpoints(std::vector<double> endpoints) {
  if (endpoints.size() % 2 != 0) {
    throw IntervalError("an interval set needs an even number of endpoints");
  }
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i + 1 < endpoints.size(); i += 2) {
    ivs.push_back({endpoints[i], endpoints[i + 1]});
  }
  // Unsorted endpoint lists would silently reorder pairs; require order up front.
  for (std::size_t i = 0; i + 1 < endpoints.size(); ++i) {
    if (!(endpoints[i] < endpoints[i + 1])) {
      std::ostringstream os;
      os << "endpoints must be strictly increasing: x_" << i + 1 << " = " << endpoints[i]
         << ", x_" << i + 2 << " = " << endpoints[i + 1];
      throw IntervalError(os.str());
    }
  }
  return IntervalSet(std::move(ivs));
}

IntervalSet IntervalSet::half_line(double left) {
  return IntervalSet({{left, std::numeric_limits<double>::infinity()}});
}

bool IntervalSet::bounded() const {
  return std::all_of(endpoints_.begin(), endpoints_.end(),
                     [](double x) { return std::isfinite(x); });
}

Interval IntervalSet::component(std::size_t j) const {
  return {endpoints_.at(2 * j), endpoints_.at(2 * j + 1)};
}

Membership IntervalSet::membership(double x) const {
  // First endpoint strictly greater than x; x is inside iff that index is odd
  // (0-based), i.e. x sits between a left and a right end.
  const auto it = std::upper_bound(endpoints_.begin(), endpoints_.end(), x);
  const auto idx = static_cast<std::size_t>(it - endpoints_.begin());
  if (idx % 2 == 1 && idx < endpoints_.size() && x > endpoints_[idx - 1]) {
    return {Phase::Inside, idx / 2 + 1};
  }
  return {Phase::Outside, std::nullopt};
}

double IntervalSet::measure_within(double lo, double hi) const {
  double total = 0.0;
  for (std::size_t j = 0; j < components(); ++j) {
    const double l = std::max(lo, endpoints_[2 * j]);
    const double r = std::min(hi, endpoints_[2 * j + 1]);
    if (r > l) total += r - l;
  }
  return total;
}

Membership component_membership(const IntervalSet& omega, double x) {
  return omega.membership(x);
}

Profile::Profile(std::vector<double> xs, std::vector<double> values)
    : xs_(std::move(xs)), vs_(std::move(values)) {
  if (xs_.empty() || xs_.size() != vs_.size()) {
    throw std::invalid_argument("profile needs matching, non-empty sample arrays");
  }
  for (std::size_t j = 0; j < xs_.size(); ++j) {
    if (!std::isfinite(xs_[j]) || !std::isfinite(vs_[j])) {
      throw std::invalid_argument("profile samples must be finite");
    }
    if (vs_[j] < 0.0) throw std::invalid_argument("profile values must be non-negative");
    if (j > 0 && !(xs_[j] > xs_[j - 1])) {
      throw std::invalid_argument("profile abscissae must be strictly increasing");
    }
    bound_ = std::max(bound_, vs_[j]);
    if (j > 0) {
      lipschitz_ =
          std::max(lipschitz_, std::abs(vs_[j] - vs_[j - 1]) / (xs_[j] - xs_[j - 1]));
    }
  }
}

Profile Profile::constant(double value) { return Profile({0.0}, {value}); }

Profile Profile::with_breaks(std::vector<double> points) const {
  Profile out = *this;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  out.breaks_ = std::move(points);
  out.has_breaks_ = true;
  return out;
}

double Profile::operator()(double x) const {
  if (x <= xs_.front()) return vs_.front();
  if (x >= xs_.back()) return vs_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const auto j = static_cast<std::size_t>(it - xs_.begin());
  const double s = (x - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
  return vs_[j - 1] + s * (vs_[j] - vs_[j - 1]);
}

double eval_profile(const Profile& f, double x) { return f(x); }

double default_margin(const Parameters& p, const Profile& v0) {
  const double m = std::max(1.0, v0.bound());
  return 1e-6 * std::max(p.a(), p.b() * m);
}

ValidationReport validate_initial(const Parameters& p, const IntervalSet& omega,
                                  const Profile& v0, double eta) {
  ValidationReport report;
  if (!(eta > 0.0)) {
    report.accepted = false;
    report.issues.push_back("degeneracy margin eta must be positive");
    return report;
  }
  if (!omega.bounded()) {
    report.accepted = false;
    report.issues.push_back("excited set must be bounded");
    return report;
  }
  const auto ends = omega.endpoints();
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const std::size_t k = i + 1;
    const double v = v0(ends[i]);
    const double w = front_speed(p, v);
    const double signed_speed = (k % 2 == 0) ? w : -w;
    EndpointReport e{k, ends[i], v, w, signed_speed > 0 ? 1 : (signed_speed < 0 ? -1 : 0)};
    if (!(std::abs(w) >= eta)) {
      report.accepted = false;
      std::ostringstream os;
      os << "W(v0(x_" << k << ")) = " << w << " at x = " << ends[i] << " is within margin "
         << eta << " of zero";
      report.issues.push_back(os.str());
    }
    report.endpoints.push_back(e);
  }
  return report;
}

ValidationReport require_valid(const Parameters& p, const IntervalSet& omega,
                               const Profile& v0, double eta) {
  if (!omega.bounded()) throw IntervalError("excited set must be bounded");
  auto report = validate_initial(p, omega, v0, eta);
  if (!report.accepted) {
    std::vector<EndpointReport> bad;
    for (const auto& e : report.endpoints) {
      if (!(std::abs(e.speed) >= eta)) bad.push_back(e);
    }
    std::string msg = "initial data violate the well-posedness condition";
    if (!report.issues.empty()) msg += ": " + report.issues.front();
    throw H2Violation(msg, std::move(bad));
  }
  return report;
}

}  // namespace fronttrack
