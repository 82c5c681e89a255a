#include "fronttrack/dopri5.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fronttrack {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace

double DenseSpan::value(double t) const {
  const double s = h > 0 ? (t - t0) / h : 0.0;
  const double s1 = 1.0 - s;
  return r[0] + s * (r[1] + s1 * (r[2] + s * (r[3] + s1 * r[4])));
}

double DenseSpan::derivative(double t) const {
  if (!(h > 0)) return 0.0;
  const double s = (t - t0) / h;
  const double s1 = 1.0 - s;
  const double d = r[1] + (1.0 - 2.0 * s) * r[2] + s * (2.0 - 3.0 * s) * r[3] +
                   2.0 * s * s1 * (s1 - s) * r[4];
  return d / h;
}

Dopri5::Dopri5(std::size_t n, Dopri5Options options) : n_(n), opt_(options) {
  for (auto& k : k_) k.assign(n, 0.0);
  tmp_.assign(n, 0.0);
  y1_.assign(n, 0.0);
  err_.assign(n, 0.0);
}

Dopri5::Step Dopri5::step(const OdeRhs& rhs, double& t, std::vector<double>& y, double& h,
                          double h_max, double t_stop) {
  auto& [k1, k2, k3, k4, k5, k6, k7] = k_;
  if (!have_k1_) {
    rhs(t, y, k1);
    have_k1_ = true;
  }
  int rejected_here = 0;
  for (;;) {
    h = std::min(h, h_max);
    bool last = false;
    if (t + h >= t_stop) {
      h = t_stop - t;
      last = true;
    }
    const double h_floor = opt_.h_min * std::max(1.0, std::abs(t));
    if (!(h > h_floor)) {
      std::ostringstream os;
      os << "step size underflow at t = " << t << " (h = " << h << ")";
      throw StepFailure(os.str());
    }

    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, tmp_, k2);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, tmp_, k3);
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, tmp_, k4);
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, tmp_, k5);
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] =
          y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double t_new = last ? t_stop : t + h;
    rhs(t_new, tmp_, k6);
    for (std::size_t i = 0; i < n_; ++i)
      y1_[i] =
          y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs(t_new, y1_, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sk = opt_.atol + opt_.rtol * std::max(std::abs(y[i]), std::abs(y1_[i]));
      err += (e / sk) * (e / sk);
    }
    err = n_ > 0 ? std::sqrt(err / static_cast<double>(n_)) : 0.0;

    const double fac =
        err > 0 ? std::clamp(opt_.safety * std::pow(err, -0.2), opt_.max_shrink, opt_.max_growth)
                : opt_.max_growth;
    if (err <= 1.0) {
      Step out{t, h, std::vector<DenseSpan>(n_), rejected_here};
      for (std::size_t i = 0; i < n_; ++i) {
        const double ydiff = y1_[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        auto& r = out.dense[i];
        r.t0 = t;
        r.h = h;
        r.r = {y[i], ydiff, bspl, ydiff - h * k7[i] - bspl,
               h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                    d7 * k7[i])};
      }
      y = y1_;
      k1 = k7;
      t = t_new;
      ++accepted_;
      // Keep the proposal from a clipped final step from shrinking future steps.
      h = last ? std::max(h * fac, h) : h * fac;
      return out;
    }
    ++rejected_;
    ++rejected_here;
    h *= std::min(1.0, fac);
  }
}

}  // namespace fronttrack
