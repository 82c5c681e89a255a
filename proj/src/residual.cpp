#include "fronttrack/residual.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace fronttrack {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 10>;

template <class F>
double gauss(F&& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return Gauss::integrate(f, a, b);
}

// Sorted, de-duplicated breakpoints restricted to [lo, hi], with panels no
// longer than max_len.
std::vector<double> panels(std::vector<double> pts, double lo, double hi, double max_len) {
  pts.push_back(lo);
  pts.push_back(hi);
  std::erase_if(pts, [&](double p) { return p < lo || p > hi || !std::isfinite(p); });
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  const double eps = 1e-13 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  for (double p : pts) {
    if (out.empty() || p - out.back() > eps) {
      out.push_back(p);
    } else {
      out.back() = std::max(out.back(), p);
    }
  }
  out.front() = lo;
  out.back() = hi;
  std::vector<double> fine{out.front()};
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double a = out[i - 1];
    const double b = out[i];
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_len)));
    for (int j = 1; j < n; ++j) fine.push_back(a + (b - a) * j / n);
    fine.push_back(b);
  }
  return fine;
}

double indicator_integral(std::span<const double> ends, double x_lo, double x_hi,
                          const std::function<double(double)>& f) {
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < ends.size(); j += 2) {
    const double l = std::max(x_lo, ends[j]);
    const double r = std::min(x_hi, ends[j + 1]);
    if (r > l) total += gauss(f, l, r);
  }
  return total;
}

}  // namespace

double ResidualPair::interface_residual() const { return std::abs(interface_lhs - interface_rhs); }
double ResidualPair::field_residual() const { return std::abs(field_lhs - field_rhs); }

TestFunction constant_test_function(double c) {
  return {[c](double, double) { return c; }, [](double, double) { return 0.0; }};
}

TestFunction polynomial_test_function(const Window& w,
                                      const std::array<std::array<double, 4>, 4>& c) {
  const double xc = 0.5 * (w.x_lo + w.x_hi);
  const double xs = 0.5 * (w.x_hi - w.x_lo);
  const double tc = 0.5 * (w.t_lo + w.t_hi);
  const double ts = 0.5 * (w.t_hi - w.t_lo);
  auto value = [=](double x, double t) {
    const double X = (x - xc) / xs;
    const double T = (t - tc) / ts;
    double s = 0.0;
    double xp = 1.0;
    for (int i = 0; i < 4; ++i, xp *= X) {
      double tp = 1.0;
      for (int j = 0; j < 4; ++j, tp *= T) s += c[i][j] * xp * tp;
    }
    return s;
  };
  auto dt = [=](double x, double t) {
    const double X = (x - xc) / xs;
    const double T = (t - tc) / ts;
    double s = 0.0;
    double xp = 1.0;
    for (int i = 0; i < 4; ++i, xp *= X) {
      double tp = 1.0;
      for (int j = 1; j < 4; ++j, tp *= T) s += c[i][j] * j * xp * tp;
    }
    return s / ts;
  };
  return {value, dt};
}

ResidualPair weak_residual(const WeakSolution& w, const Window& win, const TestFunction& phi,
                           const TestFunction& psi, const ResidualOptions& options) {
  ResidualPair out;
  const Parameters& p = w.parameters();

  // Interface identity.
  auto mass = [&](double t) {
    const auto ends = w.interface_positions(t);
    return indicator_integral(ends, win.x_lo, win.x_hi,
                              [&](double x) { return phi.value(x, t); });
  };
  out.interface_lhs = mass(win.t_hi) - mass(win.t_lo);

  std::vector<double> tb;
  for (const auto& seg : w.segments()) {
    if (seg.end_time() < win.t_lo || seg.start_time() > win.t_hi) continue;
    tb.push_back(seg.start_time());
    tb.push_back(seg.end_time());
    for (double t : seg.step_times()) tb.push_back(t);
    for (const auto& tr : seg.trajectories()) {
      for (double edge : {win.x_lo, win.x_hi}) {
        const auto t = tr.try_arrival_time(edge);
        if (t && *t > seg.start_time()) tb.push_back(*t);
      }
    }
  }
  const auto tp = panels(tb, win.t_lo, win.t_hi, options.max_time_panel);
  double rhs1 = 0.0;
  for (std::size_t i = 1; i < tp.size(); ++i) {
    const double a = tp[i - 1];
    const double b = tp[i];
    const auto& seg = w.segment_at(0.5 * (a + b));
    const auto mid_pos = seg.positions(0.5 * (a + b));
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < mid_pos.size(); ++k) {
      if (mid_pos[k] > win.x_lo && mid_pos[k] < win.x_hi) active.push_back(k);
    }
    rhs1 += gauss(
        [&](double t) {
          const auto ends = seg.positions(t);
          double s = indicator_integral(ends, win.x_lo, win.x_hi,
                                        [&](double x) { return phi.dt(x, t); });
          for (std::size_t k : active) {
            const double x = ends[k];
            s += front_speed(p, seg.evaluate_v(x, t)) * phi.value(x, t);
          }
          return s;
        },
        a, b);
  }
  out.interface_rhs = rhs1;

  // Field identity, integrated in time first at each spatial node.
  std::vector<double> xb;
  for (const auto& seg : w.segments()) {
    if (seg.end_time() < win.t_lo || seg.start_time() > win.t_hi) continue;
    for (const auto& tr : seg.trajectories()) {
      xb.push_back(tr.initial_position());
      xb.push_back(tr.position(std::clamp(win.t_hi, seg.start_time(), seg.end_time())));
    }
  }
  for (const auto& ev : w.events()) xb.push_back(ev.position);
  const auto xp = panels(xb, win.x_lo, win.x_hi, (win.x_hi - win.x_lo) / options.x_panels);

  double lhs2 = 0.0;
  double rhs2 = 0.0;
  for (std::size_t i = 1; i < xp.size(); ++i) {
    lhs2 += gauss(
        [&](double x) {
          return w.evaluate_v(x, win.t_hi) * psi.value(x, win.t_hi) -
                 w.evaluate_v(x, win.t_lo) * psi.value(x, win.t_lo);
        },
        xp[i - 1], xp[i]);
    rhs2 += gauss(
        [&](double x) {
          double s = 0.0;
          for (const auto& seg : w.segments()) {
            const double a = std::max(win.t_lo, seg.start_time());
            const double b = std::min(win.t_hi, seg.end_time());
            if (!(b > a)) continue;
            const auto hist = seg.history(x, b);
            auto cuts = hist.switches_within(a, b);
            cuts.insert(cuts.begin(), a);
            cuts.push_back(b);
            for (std::size_t j = 1; j < cuts.size(); ++j) {
              const auto& piece = hist.piece_at(0.5 * (cuts[j - 1] + cuts[j]));
              s += gauss(
                  [&](double t) {
                    const double v =
                        flow(p, piece.phase, piece.v_start, std::max(0.0, t - piece.t_start));
                    return v * psi.dt(x, t) + reaction_rate(p, piece.phase, v) * psi.value(x, t);
                  },
                  cuts[j - 1], cuts[j]);
            }
          }
          return s;
        },
        xp[i - 1], xp[i]);
  }
  out.field_lhs = lhs2;
  out.field_rhs = rhs2;
  return out;
}

}  // namespace fronttrack
