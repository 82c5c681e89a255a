#include "fronttrack/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "fronttrack/weak.hpp"

namespace fronttrack {

namespace {

constexpr double kBlowUp = 10.0;

struct Coefficients {
  double inv_dx2, inv_eps2, eps_alpha, eps_beta, dt, g1, g2, g3, g4;
};

Coefficients coefficients(const FHNConfig& cfg, const Parameters& p) {
  return {1.0 / (cfg.dx * cfg.dx), 1.0 / (cfg.eps * cfg.eps), cfg.eps * cfg.alpha,
          cfg.eps * cfg.beta, cfg.dt, p.g1(), p.g2(), p.g3(), p.g4()};
}

inline void update_point(const Coefficients& c, const double* u, const double* v, double* un,
                         double* vn, std::size_t i, std::size_t n) {
  // Neumann ends by reflection: u_{-1} = u_1, u_n = u_{n-2}.
  const double ul = i == 0 ? u[1] : u[i - 1];
  const double ur = i + 1 == n ? u[n - 2] : u[i + 1];
  const double ui = u[i];
  const double vi = v[i];
  const double lap = (ul - 2.0 * ui + ur) * c.inv_dx2;
  const double f = ui * (1.0 - ui) * (ui - 0.5 + c.eps_alpha);
  un[i] = ui + c.dt * (lap + (f - c.eps_beta * vi) * c.inv_eps2);
  vn[i] = vi + c.dt * (c.g1 * ui - c.g2 * vi / (c.g3 * vi + c.g4));
}

void prepare(const FHNState& in, FHNState& out) {
  if (in.u.size() < 3 || in.u.size() != in.v.size()) {
    throw OracleError("oracle state needs matching u, v arrays of at least 3 points");
  }
  out.u.resize(in.u.size());
  out.v.resize(in.v.size());
}

}  // namespace

FHNConfig FHNConfig::make(const Parameters& p, double eps, double x_left, double x_right,
                          double cells_per_eps, double cfl) {
  if (!(eps > 0) || !(cells_per_eps > 0) || !(cfl > 0 && cfl <= 1) || !(x_right > x_left)) {
    throw OracleError("invalid oracle discretisation request");
  }
  FHNConfig c;
  c.eps = eps;
  c.alpha = p.a() / std::sqrt(2.0);
  c.beta = p.b() / (6.0 * std::sqrt(2.0));
  const double target = eps / cells_per_eps;
  const auto cells = static_cast<std::size_t>(std::ceil((x_right - x_left) / target));
  c.dx = (x_right - x_left) / static_cast<double>(cells);
  c.x_left = x_left;
  c.x_right = x_right;
  c.dt = cfl * std::min(0.5 * c.dx * c.dx, 0.25 * eps * eps);
  c.validate(p);
  return c;
}

std::size_t FHNConfig::points() const {
  return static_cast<std::size_t>(std::llround((x_right - x_left) / dx)) + 1;
}

void FHNConfig::validate(const Parameters& p) const {
  if (!(dt <= 0.5 * dx * dx) || !(dt <= 0.25 * eps * eps) || !(dt > 0)) {
    throw OracleError("oracle time step violates dt <= dx^2/2 or dt <= eps^2/4");
  }
  if (std::abs(std::sqrt(2.0) * alpha - p.a()) > 1e-14 * p.a() ||
      std::abs(6.0 * std::sqrt(2.0) * beta - p.b()) > 1e-14 * p.b()) {
    throw OracleError("oracle alpha/beta inconsistent with wave constants a/b");
  }
}

std::pair<double, double> oracle_domain(const Parameters& p, const IntervalSet& omega,
                                        const Profile& v0, double eps, double horizon) {
  const auto ends = omega.endpoints();
  const double margin = 10.0 * eps + (p.a() + p.b() * v0.bound()) * horizon;
  const double lo = ends.empty() ? 0.0 : ends.front();
  const double hi = ends.empty() ? 0.0 : ends.back();
  return {lo - margin, hi + margin};
}

double f_eps(double u, double eps, double alpha) {
  return u * (1.0 - u) * (u - 0.5 + eps * alpha);
}

FHNState init_fhn(const FHNConfig& cfg, const Parameters& p, const IntervalSet& omega,
                  const Profile& v0) {
  cfg.validate(p);
  const auto ends = omega.endpoints();
  for (double e : ends) {
    if (!(e >= cfg.x_left + 10.0 * cfg.eps && e <= cfg.x_right - 10.0 * cfg.eps)) {
      std::ostringstream os;
      os << "oracle domain [" << cfg.x_left << ", " << cfg.x_right
         << "] too small for endpoint " << e << " (margin 10 eps)";
      throw OracleError(os.str());
    }
  }
  const double width = 2.0 * std::sqrt(2.0) * cfg.eps;
  FHNState s;
  const std::size_t n = cfg.points();
  s.u.resize(n);
  s.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = cfg.x(i);
    double d = std::numeric_limits<double>::infinity();
    for (double e : ends) d = std::min(d, std::abs(x - e));
    if (ends.empty()) d = std::numeric_limits<double>::infinity();
    const bool inside = omega.membership(x).phase == Phase::Inside;
    const double signed_d = inside ? d : -d;
    s.u[i] = 0.5 * (1.0 + std::tanh(signed_d / width));
    s.v[i] = v0(x);
  }
  return s;
}

void step_fhn_into(const FHNConfig& cfg, const Parameters& p, const FHNState& in, FHNState& out) {
  prepare(in, out);
  const auto c = coefficients(cfg, p);
  const std::size_t n = in.u.size();
  const double* u = in.u.data();
  const double* v = in.v.data();
  double* un = out.u.data();
  double* vn = out.v.data();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) update_point(c, u, v, un, vn, i, n);
  out.t = in.t + cfg.dt;
}

void step_fhn_reference(const FHNConfig& cfg, const Parameters& p, const FHNState& in,
                        FHNState& out) {
  prepare(in, out);
  const auto c = coefficients(cfg, p);
  const std::size_t n = in.u.size();
  for (std::size_t i = 0; i < n; ++i) {
    update_point(c, in.u.data(), in.v.data(), out.u.data(), out.v.data(), i, n);
  }
  out.t = in.t + cfg.dt;
}

FHNState step_fhn(const FHNConfig& cfg, const Parameters& p, const FHNState& s) {
  FHNState out;
  step_fhn_into(cfg, p, s, out);
  return out;
}

std::vector<Crossing> extract_interfaces(const FHNConfig& cfg, const FHNState& s) {
  std::vector<Crossing> out;
  for (std::size_t i = 0; i + 1 < s.u.size(); ++i) {
    const bool above_l = s.u[i] >= 0.5;
    const bool above_r = s.u[i + 1] >= 0.5;
    if (above_l == above_r) continue;
    const double frac = (0.5 - s.u[i]) / (s.u[i + 1] - s.u[i]);
    out.push_back({cfg.x(i) + frac * cfg.dx, above_r});
  }
  return out;
}

std::vector<double> interface_positions(const FHNConfig& cfg, const FHNState& s) {
  std::vector<double> out;
  for (const auto& c : extract_interfaces(cfg, s)) out.push_back(c.x);
  return out;
}

FHNRun run_fhn(const FHNConfig& cfg_in, const Parameters& p, const IntervalSet& omega,
               const Profile& v0, double horizon, double sample_dt) {
  FHNRun run;
  run.config = cfg_in;
  auto& cfg = run.config;
  const auto per_sample = static_cast<std::size_t>(std::ceil(sample_dt / cfg_in.dt));
  cfg.dt = sample_dt / static_cast<double>(per_sample);
  const auto samples = static_cast<std::size_t>(std::llround(horizon / sample_dt));

  FHNState a = init_fhn(cfg, p, omega, v0);
  FHNState b;
  run.tracks.times.push_back(0.0);
  run.tracks.positions.push_back(interface_positions(cfg, a));
  for (std::size_t k = 1; k <= samples; ++k) {
    for (std::size_t j = 0; j < per_sample; ++j) {
      step_fhn_into(cfg, p, a, b);
      std::swap(a, b);
      ++run.steps;
    }
    a.t = static_cast<double>(k) * sample_dt;
    const auto [lo, hi] = std::minmax_element(a.u.begin(), a.u.end());
    if (!(std::abs(*lo) <= kBlowUp && std::abs(*hi) <= kBlowUp)) {
      std::ostringstream os;
      os << "oracle blow-up at t = " << a.t;
      throw OracleError(os.str());
    }
    run.tracks.times.push_back(a.t);
    run.tracks.positions.push_back(interface_positions(cfg, a));
  }
  run.final_state = std::move(a);
  return run;
}

TrackSamples sample_tracks(const WeakSolution& w, const std::vector<double>& times) {
  TrackSamples out;
  for (double t : times) {
    if (t > w.end_time()) break;
    out.times.push_back(t);
    out.positions.push_back(w.interface_positions(t));
  }
  return out;
}

ComparisonReport compare_tracks(const TrackSamples& candidate, const TrackSamples& reference,
                                double horizon, double first_event) {
  ComparisonReport r;
  const std::size_t n = std::min(candidate.times.size(), reference.times.size());
  if (!reference.positions.empty()) {
    const auto& p0 = reference.positions.front();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pi = reference.positions[i];
      if (pi.size() != p0.size()) continue;
      for (std::size_t k = 0; k < pi.size(); ++k) {
        r.max_displacement = std::max(r.max_displacement, std::abs(pi[k] - p0[k]));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double t = reference.times[i];
    if (t > horizon + 1e-12) break;
    if (std::abs(candidate.times[i] - t) > 1e-9) {
      throw std::invalid_argument("track samples are not taken at common times");
    }
    const auto& c = candidate.positions[i];
    const auto& q = reference.positions[i];
    if (c.size() != q.size()) {
      if (t < first_event) {
        std::ostringstream os;
        os << "interface count " << c.size() << " vs " << q.size() << " at t = " << t
           << " before the first annihilation";
        throw InterfaceCountMismatch(os.str());
      }
      continue;
    }
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double e = std::abs(c[k] - q[k]);
      if (e > r.sup_error) {
        r.sup_error = e;
        r.time_of_sup = t;
      }
    }
    ++r.compared_times;
  }
  r.relative_error = r.max_displacement > 0 ? r.sup_error / r.max_displacement : 0.0;
  return r;
}

ComparisonReport compare_trajectories(const FHNRun& fhn, const WeakSolution& w, double horizon) {
  const double first_event = w.events().empty() ? std::numeric_limits<double>::infinity()
                                                : w.events().front().time;
  return compare_tracks(fhn.tracks, sample_tracks(w, fhn.tracks.times), horizon, first_event);
}

std::vector<SweepEntry> oracle_sweep(const Parameters& p, const IntervalSet& omega,
                                     const Profile& v0, const WeakSolution& w,
                                     const std::vector<double>& eps_list, double horizon,
                                     double sample_dt, double cells_per_eps) {
  // One task per eps; the spatial loop inside each step stays OpenMP-parallel.
  std::vector<std::future<SweepEntry>> tasks;
  tasks.reserve(eps_list.size());
  for (double eps : eps_list) {
    tasks.push_back(std::async(std::launch::async, [&, eps] {
      const auto [lo, hi] = oracle_domain(p, omega, v0, eps, horizon);
      const auto cfg = FHNConfig::make(p, eps, lo, hi, cells_per_eps);
      auto run = run_fhn(cfg, p, omega, v0, horizon, sample_dt);
      auto report = compare_trajectories(run, w, horizon);
      return SweepEntry{eps, run.config, report, std::move(run)};
    }));
  }
  std::vector<SweepEntry> out;
  out.reserve(tasks.size());
  for (auto& t : tasks) out.push_back(t.get());
  return out;
}

}  // namespace fronttrack
