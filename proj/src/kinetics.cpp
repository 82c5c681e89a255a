#include "fronttrack/kinetics.hpp"

#include <cmath>
#include <sstream>

namespace fronttrack {

namespace {

constexpr double kRelTol = 1e-12;
constexpr int kMaxIter = 100;
constexpr double kTinyLevel = 1e-14;

// Safeguarded Newton on a strictly monotone scalar function. The bracket
// [lo, hi] must contain the root; f(lo) and f(hi) need opposite signs.
// Convergence is declared when a step falls below kRelTol * max(|x|, scale).
template <class F, class DF>
double safeguarded_newton(F f, DF df, double lo, double hi, double x0, double scale,
                          const char* what) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    // Analytic bounds can be tight to rounding; accept a numerically exact end.
    const double tiny = 1e-14 * (1.0 + std::abs(lo) + std::abs(hi));
    if (std::abs(flo) <= tiny) return lo;
    if (std::abs(fhi) <= tiny) return hi;
    throw ConvergenceError(std::string(what) + ": root not bracketed");
  }
  const bool increasing = flo < 0;
  double x = x0;
  for (int it = 0; it < kMaxIter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0) == increasing) {
      lo = x;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = x - fx / d;
    const double tol = kRelTol * std::max(std::abs(x), scale);
    // A converged Newton step may round onto the bracket end; take it rather
    // than bisecting.
    if (std::isfinite(next) && std::abs(next - x) <= tol) return next;
    if (!(next > lo && next < hi) || !std::isfinite(next)) {
      next = 0.5 * (lo + hi);
    }
    if (hi - lo <= tol) return next;
    x = next;
  }
  throw ConvergenceError(std::string(what) + ": no convergence in 100 iterations");
}

}  // namespace

const char* to_string(Phase p) { return p == Phase::Inside ? "inside" : "outside"; }

Parameters::Parameters(double g1, double g2, double g3, double g4, double a, double b,
                       double reference_level)
    : g1_(g1), g2_(g2), g3_(g3), g4_(g4), a_(a), b_(b), reference_(reference_level) {
  const double all[] = {g1, g2, g3, g4, a, b};
  for (double c : all) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw ParameterError("kinetic and wave constants must be finite and positive");
    }
  }
  if (!(reference_level > 0.0) || !std::isfinite(reference_level)) {
    throw ParameterError("reference level M must be finite and positive");
  }
  if (!(g1 * g3 > g2)) {
    throw ParameterError("g1*g3 > g2 is required (inside kinetics must stay positive)");
  }
  strong_ = g1 * g3 > 2.0 * g2;
}

Parameters Parameters::with_reference_level(double m) const {
  return Parameters(g1_, g2_, g3_, g4_, a_, b_, m);
}

std::string assumption_warning(const Parameters& p) {
  if (p.strong_assumption()) return {};
  std::ostringstream os;
  os << "assumption (A) g1*g3>2*g2 not satisfied (g1*g3=" << p.g1() * p.g3()
     << ", 2*g2=" << 2.0 * p.g2() << "); continuing under g1*g3>g2";
  return os.str();
}

double reaction_rate(const Parameters& p, Phase phase, double v) {
  if (v < 0.0) throw DomainError("reaction_rate: v must be non-negative");
  return p.g1() * indicator(phase) - p.g2() * v / (p.g3() * v + p.g4());
}

double front_speed(const Parameters& p, double v) { return p.a() - p.b() * v; }

double antiderivative_outside(const Parameters& p, double v) {
  if (!(v > 0.0)) throw DomainError("antiderivative_outside: v must be positive");
  const double m = p.reference_level();
  return -(p.g3() / p.g2()) * (v - m) - (p.g4() / p.g2()) * std::log(v / m);
}

double antiderivative_inside(const Parameters& p, double v) {
  if (v < 0.0) throw DomainError("antiderivative_inside: v must be non-negative");
  const double A = p.g1() * p.g3() - p.g2();
  const double B = p.g1() * p.g4();
  return (p.g3() / A) * v - (p.g2() * p.g4() / (A * A)) * std::log1p(A * v / B);
}

double flow_outside(const Parameters& p, double v0, double t) {
  if (v0 < 0.0 || t < 0.0) throw DomainError("flow_outside: v0 and t must be non-negative");
  if (t == 0.0 || v0 == 0.0) return v0;
  const double decay = p.g2() / p.g4();
  if (v0 < kTinyLevel) return v0 * std::exp(-decay * t);

  // Work in w = ln v. Elapsed time from v0 to e^w:
  //   (g3/g2)(v0 - e^w) + (g4/g2)(ln v0 - w)
  // which is strictly decreasing in w. The reference level M cancels.
  const double lv0 = std::log(v0);
  const double c3 = p.g3() / p.g2();
  const double c4 = p.g4() / p.g2();
  auto f = [&](double w) { return c3 * (v0 - std::exp(w)) + c4 * (lv0 - w) - t; };
  auto df = [&](double w) { return -c3 * std::exp(w) - c4; };
  // v0*exp(-g2 t/g4) <= v(t) <= v0 and v(t) >= v0 - g2 t/g3.
  double lo = lv0 - decay * t;
  const double linear = v0 - t * p.g2() / p.g3();
  if (linear > 0.0) lo = std::max(lo, std::log(linear));
  const double hi = lv0;
  const double w = safeguarded_newton(f, df, lo, hi, 0.5 * (lo + hi), 0.1, "flow_outside");
  return std::exp(w);
}

double flow_inside(const Parameters& p, double v0, double t) {
  if (v0 < 0.0 || t < 0.0) throw DomainError("flow_inside: v0 and t must be non-negative");
  if (t == 0.0) return v0;
  const double A = p.g1() * p.g3() - p.g2();
  const double B = p.g1() * p.g4();
  const double c3 = p.g3() / A;
  const double cl = p.g2() * p.g4() / (A * A);
  const double base = A * v0 + B;
  // Elapsed time from v0 to v; convex and increasing in v.
  auto f = [&](double v) { return c3 * (v - v0) - cl * std::log1p(A * (v - v0) / base) - t; };
  auto df = [&](double v) { return 1.0 / reaction_rate(p, Phase::Inside, v); };
  const double lo = v0 + p.inside_rate_floor() * t;
  const double hi = v0 + p.g1() * t;
  // Newton from the right end converges monotonically for a convex increasing f.
  return safeguarded_newton(f, df, lo, hi, hi, 1e-300, "flow_inside");
}

double flow(const Parameters& p, Phase phase, double v0, double t) {
  return phase == Phase::Inside ? flow_inside(p, v0, t) : flow_outside(p, v0, t);
}

}  // namespace fronttrack
