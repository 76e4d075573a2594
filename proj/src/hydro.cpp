#include "centroflat/hydro.hpp"

#include <cmath>
#include <fstream>

namespace centroflat {

Mat3 flux_matrix(double p, double a, double b) {
  if (p == 0.0) throw std::domain_error("flux_matrix: p = 0");
  return Mat3::from_rows({0, 1, 0}, {0, 0, 1},
                         {-(1.0 + a * b) / (p * p), b / p, a / p});
}

CubicRoots char_speeds(double p, double a, double b, double q) {
  return cubic_roots(p, -a, -b, q);
}

namespace {

struct V3 {
  double p, a, b;
};

inline V3 operator+(V3 l, V3 r) { return {l.p + r.p, l.a + r.a, l.b + r.b}; }
inline V3 operator-(V3 l, V3 r) { return {l.p - r.p, l.a - r.a, l.b - r.b}; }
inline V3 operator*(double s, V3 v) { return {s * v.p, s * v.a, s * v.b}; }

// U(v) w without forming the matrix
inline V3 apply_U(const V3& v, const V3& w) {
  return {w.a, w.b,
          -(1.0 + v.a * v.b) / (v.p * v.p) * w.p + v.b / v.p * w.a +
              v.a / v.p * w.b};
}

class Ghosted {
 public:
  Ghosted(const std::vector<double>& p, const std::vector<double>& a,
          const std::vector<double>& b, HydroBC bc)
      : n_(static_cast<int>(p.size())), bc_(bc), p_(p), a_(a), b_(b) {}

  V3 operator[](int i) const {
    i = wrap(i);
    return {p_[i], a_[i], b_[i]};
  }

 private:
  int wrap(int i) const {
    if (bc_ == HydroBC::Periodic) {
      i %= n_;
      if (i < 0) i += n_;
      return i;
    }
    return std::clamp(i, 0, n_ - 1);  // constant extrapolation
  }
  int n_;
  HydroBC bc_;
  const std::vector<double>&p_, &a_, &b_;
};

double max_abs_re_speed(const HydroState& s) {
  double m = 0.0;
  for (int i = 0; i < s.n(); ++i) {
    const CubicRoots r = char_speeds(s.p[i], s.a[i], s.b[i], s.q(i));
    for (const auto& z : r.z) m = std::max(m, std::abs(z.real()));
  }
  return m;
}

}  // namespace

HydroTrajectory evolve(const HydroState& s0, double y_end,
                       const EvolveOptions& opt) {
  if (!(opt.cfl > 0.0 && opt.cfl <= 1.0))
    throw std::invalid_argument("evolve: cfl must lie in (0, 1]");
  if (s0.n() < 5) throw std::invalid_argument("evolve: need at least 5 nodes");

  HydroTrajectory out;
  HydroState s = s0;
  out.snapshots.push_back(s);
  const int n = s.n();
  std::vector<double> np(n), na(n), nb(n);
  std::vector<double> hp(n), ha(n), hb(n);  // half-step values at i+1/2

  while (s.y < y_end - 1e-15 && out.steps < opt.max_steps) {
    const double denom = std::max(max_abs_re_speed(s), 1e-12);
    double dy = opt.cfl * s.dx / denom;
    dy = std::min(dy, y_end - s.y);

    const Ghosted v(s.p, s.a, s.b, opt.bc);
    const double r = dy / s.dx;

    if (opt.scheme == HydroScheme::LW2) {
      // two-step Lax-Wendroff for v_y = U(v) v_x
      for (int i = -1; i < n; ++i) {
        const V3 vl = v[i], vr = v[i + 1];
        const V3 mid = 0.5 * (vl + vr);
        const V3 half = mid + (0.5 * r) * apply_U(mid, vr - vl);
        const int k = std::clamp(i + 1, 0, n - 1);  // storage at i+1/2 -> index shift
        if (i >= -1 && i + 1 <= n) {
          // store at position i+1 in [0, n]: use arrays of size n+1 packed below
        }
        (void)k;
        if (i + 1 >= 0 && i + 1 <= n) {
          // hp[j] holds the half value between nodes j-1 and j
          if (i + 1 < n + 1) {
            if (i + 1 <= n - 1 + 1) {
              // fallthrough to vector assignment below
            }
          }
        }
        // packed: index m = i+1 in [0, n]; reuse hp/ha/hb of size n with an
        // extra scalar for the right end
        if (i + 1 < n) {
          hp[i + 1] = half.p;
          ha[i + 1] = half.a;
          hb[i + 1] = half.b;
        } else {
          np[0] = half.p;  // stash the rightmost half value temporarily
          na[0] = half.a;
          nb[0] = half.b;
        }
      }
      const V3 right_half{np[0], na[0], nb[0]};
      for (int i = 0; i < n; ++i) {
        const V3 hl{hp[i], ha[i], hb[i]};                       // at i-1/2
        const V3 hr = (i + 1 < n) ? V3{hp[i + 1], ha[i + 1], hb[i + 1]}
                                  : right_half;                 // at i+1/2
        const V3 mid = 0.5 * (hl + hr);
        V3 vn = v[i] + r * apply_U(mid, hr - hl);
        np[i] = vn.p;
        na[i] = vn.a;
        nb[i] = vn.b;
      }
    } else {
      // midpoint RK2 with central differences
      std::vector<double> wp(n), wa(n), wb(n);
      auto stage = [&](const Ghosted& src, std::vector<double>& tp,
                       std::vector<double>& ta, std::vector<double>& tb,
                       double coef) {
        for (int i = 0; i < n; ++i) {
          const V3 c = src[i];
          const V3 dv = 0.5 * (src[i + 1] - src[i - 1]);
          const V3 k = apply_U(c, dv);
          const V3 o = v[i] + (coef * r) * k;
          tp[i] = o.p;
          ta[i] = o.a;
          tb[i] = o.b;
        }
      };
      stage(v, wp, wa, wb, 0.5);
      const Ghosted w(wp, wa, wb, opt.bc);
      stage(w, np, na, nb, 1.0);
    }

    if (opt.dissipation > 0.0) {
      const Ghosted u(np, na, nb, opt.bc);
      std::vector<double> dp(n), da(n), db(n);
      for (int i = 0; i < n; ++i) {
        const V3 d4 = u[i - 2] - 4.0 * u[i - 1] + 6.0 * u[i] -
                      4.0 * u[i + 1] + u[i + 2];
        dp[i] = d4.p;
        da[i] = d4.a;
        db[i] = d4.b;
      }
      for (int i = 0; i < n; ++i) {
        np[i] -= opt.dissipation * dp[i];
        na[i] -= opt.dissipation * da[i];
        nb[i] -= opt.dissipation * db[i];
      }
    }

    // a posteriori cross-derivative estimate |a_y - b_x|
    for (int i = 1; i < n - 1; ++i) {
      const double ay = (na[i] - s.a[i]) / dy;
      const double bx = (nb[i + 1] - nb[i - 1]) / (2 * s.dx);
      out.max_ay_bx_defect = std::max(out.max_ay_bx_defect, std::abs(ay - bx));
    }

    s.p.swap(np);
    s.a.swap(na);
    s.b.swap(nb);
    s.y += dy;
    ++out.steps;

    for (int i = 0; i < n; ++i)
      if (std::abs(s.p[i]) < opt.p_floor)
        throw std::runtime_error("evolve: |p| crossed the floor at x = " +
                                 std::to_string(s.x(i)) + ", y = " +
                                 std::to_string(s.y));

    if (opt.snapshot_stride > 0 && out.steps % opt.snapshot_stride == 0)
      out.snapshots.push_back(s);
  }
  if (s.y < y_end - 1e-12)
    throw std::runtime_error("evolve: max_steps reached before y_end");
  if (out.snapshots.size() < 2 || out.snapshots.back().y != s.y)
    out.snapshots.push_back(s);
  return out;
}

std::array<double, 4> rarefaction_eval(const RarefactionParams& par, Point2 pt) {
  if (par.mu == 0.0) throw std::invalid_argument("rarefaction_eval: mu = 0");
  auto phi = catalog::make_phi(par.phi);
  const double c = par.c, mu = par.mu;
  const double f = phi(pt.x + c * pt.y);
  return {f, c * f + mu, c * c * f - 1.0 / mu,
          c * c * c * f + c * c * mu - c / mu};
}

std::array<double, 4> revolution_eval(const RevolutionParams& par, Point2 pt) {
  const double xi = pt.x * pt.y;
  const auto s =
      catalog::revolution_scalars(par.epsilon, par.nu, par.mu, par.branch, xi);
  const double alpha = 2 * s.G + xi * s.Gp;
  const double beta = 2 * s.H + xi * s.Hp;
  return {pt.y * pt.y * pt.y * s.Gp, pt.y * alpha, pt.x * beta,
          pt.x * pt.x * pt.x * s.Hp};
}

std::vector<double> revolution_potential_check(const RevolutionParams& par,
                                               double s1, double s2, double r1,
                                               double r2, double s,
                                               const std::vector<double>& xi) {
  if (std::abs((r1 - s1) - par.epsilon) > 1e-12 ||
      std::abs((s2 - r2) - par.nu) > 1e-12)
    throw std::invalid_argument(
        "revolution_potential_check: constants map inconsistent with "
        "(epsilon, nu)");
  std::vector<double> res;
  res.reserve(xi.size());
  for (double z : xi) {
    const auto sc =
        catalog::revolution_scalars(par.epsilon, par.nu, par.mu, par.branch, z);
    const double Fpp = sc.G - s1 / z + s2 / (z * z);
    res.push_back(z * z * Fpp * Fpp + (r1 + s1) * z * Fpp - (r2 + s2) * Fpp -
                  (r1 * s2 + r2 * s1) / z + r2 * s2 / (z * z) + z / 2 + s);
  }
  return res;
}

HydroState hydro_state_from(const RarefactionParams& par, double x0, double x1,
                            int n, double y0) {
  HydroState s;
  s.x0 = x0;
  s.dx = (x1 - x0) / (n - 1);
  s.y = y0;
  s.p.resize(n);
  s.a.resize(n);
  s.b.resize(n);
  auto phi = catalog::make_phi(par.phi);
  for (int i = 0; i < n; ++i) {
    const double f = phi(s.x(i) + par.c * y0);
    s.p[i] = f;
    s.a[i] = par.c * f + par.mu;
    s.b[i] = par.c * par.c * f - 1.0 / par.mu;
  }
  return s;
}

void write_trajectory_csv(const HydroTrajectory& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
  out << "y,x,p,a,b,q\n";
  for (const HydroState& s : t.snapshots)
    for (int i = 0; i < s.n(); ++i)
      out << format_g(s.y, 17) << ',' << format_g(s.x(i), 17) << ','
          << format_g(s.p[i], 17) << ',' << format_g(s.a[i], 17) << ','
          << format_g(s.b[i], 17) << ',' << format_g(s.q(i), 17) << '\n';
}

}  // namespace centroflat
