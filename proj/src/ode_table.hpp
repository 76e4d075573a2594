#pragma once

// Dense-output ODE trajectories for the ODE-defined solution families.
// Integrated once at construction (dopri5, adaptive), sampled uniformly,
// evaluated by cubic Hermite interpolation between samples.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace centroflat::detail {

using State3 = std::array<double, 3>;

class OdeTable {
 public:
  using Rhs = std::function<void(const State3&, State3&, double)>;

  // Integrates from (t_anchor, y0) backward to lo and forward to hi.
  OdeTable(Rhs rhs, const State3& y0, double t_anchor, double lo, double hi,
           int samples_per_side = 2000, double abs_tol = 1e-12,
           double rel_tol = 1e-12)
      : rhs_(std::move(rhs)), anchor_(t_anchor), lo_(lo), hi_(hi) {
    if (!(lo <= t_anchor && t_anchor <= hi))
      throw std::invalid_argument("OdeTable: anchor outside [lo, hi]");
    build_side(y0, t_anchor, hi, samples_per_side, abs_tol, rel_tol, fwd_);
    build_side(y0, t_anchor, lo, samples_per_side, abs_tol, rel_tol, bwd_);
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  State3 eval(double t) const {
    if (t < lo_ - 1e-12 || t > hi_ + 1e-12)
      throw std::domain_error("OdeTable: evaluation outside integrated range");
    const Side& s = (t >= anchor_) ? fwd_ : bwd_;
    if (s.y.size() == 1) return s.y[0];
    double u = (t - anchor_) / s.dt;  // >= 0 on either side
    int k = std::min(static_cast<int>(u), static_cast<int>(s.y.size()) - 2);
    k = std::max(k, 0);
    double w = u - k;
    return hermite(s.y[k], s.d[k], s.y[k + 1], s.d[k + 1], w, s.dt);
  }

  // rhs applied to the interpolated state; component [2] is the closing
  // derivative of a third-order scalar ODE.
  State3 deriv(double t) const {
    State3 y = eval(t), dy;
    rhs_(y, dy, t);
    return dy;
  }

 private:
  struct Side {
    double dt = 0.0;  // signed step from the anchor
    std::vector<State3> y, d;
  };

  void build_side(const State3& y0, double t0, double t1, int n, double at,
                  double rt, Side& side) {
    namespace ode = boost::numeric::odeint;
    if (t1 == t0) {
      side.dt = 1.0;
      side.y = {y0};
      State3 d0;
      rhs_(y0, d0, t0);
      side.d = {d0};
      return;
    }
    side.dt = (t1 - t0) / n;
    side.y.reserve(n + 1);
    side.d.reserve(n + 1);
    auto stepper = ode::make_dense_output(at, rt, ode::runge_kutta_dopri5<State3>());
    State3 y = y0;
    auto system = [this](const State3& s, State3& dsdt, double t) { rhs_(s, dsdt, t); };
    ode::integrate_const(stepper, system, y, t0, t1, side.dt,
                         [&](const State3& s, double t) {
                           for (double v : s)
                             if (!std::isfinite(v))
                               throw std::runtime_error(
                                   "OdeTable: trajectory diverged (non-finite state)");
                           State3 d;
                           rhs_(s, d, t);
                           side.y.push_back(s);
                           side.d.push_back(d);
                         });
    if (static_cast<int>(side.y.size()) < n + 1)
      throw std::runtime_error("OdeTable: integration stopped early");
  }

  static State3 hermite(const State3& ya, const State3& da, const State3& yb,
                        const State3& db, double w, double dt) {
    const double w2 = w * w, w3 = w2 * w;
    const double h00 = 2 * w3 - 3 * w2 + 1, h10 = w3 - 2 * w2 + w;
    const double h01 = -2 * w3 + 3 * w2, h11 = w3 - w2;
    State3 out;
    for (int c = 0; c < 3; ++c)
      out[c] = h00 * ya[c] + h10 * dt * da[c] + h01 * yb[c] + h11 * dt * db[c];
    return out;
  }

  Rhs rhs_;
  double anchor_, lo_, hi_;
  Side fwd_, bwd_;
};

}  // namespace centroflat::detail
