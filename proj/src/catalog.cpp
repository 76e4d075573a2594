#include "centroflat/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "ode_table.hpp"
#include "piecewise_poly.hpp"

namespace centroflat {

std::string to_string(EquationForm f) {
  switch (f) {
    case EquationForm::Ass1: return "ass1";
    case EquationForm::Ass2: return "ass2";
    case EquationForm::Ass3: return "ass3";
  }
  return "?";
}

namespace catalog {

namespace {

double get(const std::map<std::string, double>& m, const std::string& k,
           double dflt) {
  auto it = m.find(k);
  return it == m.end() ? dflt : it->second;
}

[[noreturn]] void domain_violation(const std::string& id, Point2 pt) {
  throw std::domain_error("catalog: point (" + std::to_string(pt.x) + ", " +
                          std::to_string(pt.y) + ") outside domain of " + id);
}

ClosedFormSolution simple(std::string id, EquationForm form,
                          std::function<bool(Point2)> dom,
                          std::function<Jet3(Point2)> raw) {
  ClosedFormSolution s;
  s.id = std::move(id);
  s.form = form;
  s.domain = std::move(dom);
  s.jet = [id = s.id, dom = s.domain, raw = std::move(raw)](Point2 pt) {
    if (!dom(pt)) domain_violation(id, pt);
    return raw(pt);
  };
  return s;
}

// ---- the six table rows, f-form -------------------------------------------

ClosedFormSolution make_trivial_cubic() {
  return simple("trivial_cubic", EquationForm::Ass1,
                [](Point2) { return true; },
                [](Point2 pt) {
                  Jet3 j;
                  const double x = pt.x, y = pt.y;
                  j.f = x * x * x / 6 + y * y * y / 6;
                  j.fx = x * x / 2;
                  j.fy = y * y / 2;
                  j.fxx = x;
                  j.fyy = y;
                  j.fxy = 0;
                  j.p = 1;
                  j.a = 0;
                  j.b = 0;
                  j.q = 1;
                  return j;
                });
}

ClosedFormSolution make_convex_trivial() {
  return simple("convex_trivial", EquationForm::Ass2,
                [](Point2) { return true; },
                [](Point2 pt) {
                  Jet3 j;
                  const double x = pt.x, y = pt.y;
                  j.f = x * x * y / 2;
                  j.fx = x * y;
                  j.fy = x * x / 2;
                  j.fxx = y;
                  j.fxy = x;
                  j.fyy = 0;
                  j.p = 0;
                  j.a = 1;
                  j.b = 0;
                  j.q = 0;
                  return j;
                });
}

ClosedFormSolution make_table1_f() {
  // f = x^3/(6y) + y^4/24
  return simple("table1_f", EquationForm::Ass1,
                [](Point2 pt) { return std::abs(pt.y) > 1e-12; },
                [](Point2 pt) {
                  const double x = pt.x, y = pt.y;
                  Jet3 j;
                  j.f = x * x * x / (6 * y) + y * y * y * y / 24;
                  j.fx = x * x / (2 * y);
                  j.fy = -x * x * x / (6 * y * y) + y * y * y / 6;
                  j.fxx = x / y;
                  j.fxy = -x * x / (2 * y * y);
                  j.fyy = x * x * x / (3 * y * y * y) + y * y / 2;
                  j.p = 1 / y;
                  j.a = -x / (y * y);
                  j.b = x * x / (y * y * y);
                  j.q = -x * x * x / (y * y * y * y) + y;
                  return j;
                });
}

ClosedFormSolution make_table2_f() {
  // f = x y^3/6 + x^2 ln x / 2 - 3x^2/4
  return simple("table2_f", EquationForm::Ass1,
                [](Point2 pt) { return pt.x > 0.0; },
                [](Point2 pt) {
                  const double x = pt.x, y = pt.y, lx = std::log(x);
                  Jet3 j;
                  j.f = x * y * y * y / 6 + x * x * lx / 2 - 0.75 * x * x;
                  j.fx = y * y * y / 6 + x * lx - x;
                  j.fy = x * y * y / 2;
                  j.fxx = lx;
                  j.fxy = y * y / 2;
                  j.fyy = x * y;
                  j.p = 1 / x;
                  j.a = 0;
                  j.b = y;
                  j.q = x;
                  return j;
                });
}

ClosedFormSolution make_table3_f() {
  // f = x y^3/12 - x^2 ln y/2 + x^2 ln x/2 - 3x^2/4
  return simple("table3_f", EquationForm::Ass1,
                [](Point2 pt) { return pt.x > 0.0 && pt.y > 0.0; },
                [](Point2 pt) {
                  const double x = pt.x, y = pt.y;
                  const double lx = std::log(x), ly = std::log(y);
                  Jet3 j;
                  j.f = x * y * y * y / 12 - x * x * ly / 2 + x * x * lx / 2 -
                        0.75 * x * x;
                  j.fx = y * y * y / 12 - x * ly + x * lx - x;
                  j.fy = x * y * y / 4 - x * x / (2 * y);
                  j.fxx = lx - ly;
                  j.fxy = y * y / 4 - x / y;
                  j.fyy = x * y / 2 + x * x / (2 * y * y);
                  j.p = 1 / x;
                  j.a = -1 / y;
                  j.b = y / 2 + x / (y * y);
                  j.q = x / 2 - x * x / (y * y * y);
                  return j;
                });
}

ClosedFormSolution make_table4_f() {
  // f = y x^3/6 + y^2 ln y/2 - 3y^2/4 (row 2 with x and y interchanged)
  return simple("table4_f", EquationForm::Ass1,
                [](Point2 pt) { return pt.y > 0.0; },
                [](Point2 pt) {
                  const double x = pt.x, y = pt.y, ly = std::log(y);
                  Jet3 j;
                  j.f = y * x * x * x / 6 + y * y * ly / 2 - 0.75 * y * y;
                  j.fx = y * x * x / 2;
                  j.fy = x * x * x / 6 + y * ly - y;
                  j.fxx = x * y;
                  j.fxy = x * x / 2;
                  j.fyy = ly;
                  j.p = y;
                  j.a = x;
                  j.b = 0;
                  j.q = 1 / y;
                  return j;
                });
}

ClosedFormSolution make_table5_f() {
  // f = (4y^2/15)(x/y - y/2)^{5/2}
  return simple("table5_f", EquationForm::Ass1,
                [](Point2 pt) {
                  return std::abs(pt.y) > 1e-12 && pt.x / pt.y - pt.y / 2 > 0.0;
                },
                [](Point2 pt) {
                  const double x = pt.x, y = pt.y;
                  const double w = x / y - y / 2;
                  const double wy = -x / (y * y) - 0.5;
                  const double wyy = 2 * x / (y * y * y);
                  const double wyyy = -6 * x / (y * y * y * y);
                  const double sw = std::sqrt(w), w32 = w * sw, w52 = w * w * sw;
                  Jet3 j;
                  j.f = 4.0 / 15.0 * y * y * w52;
                  j.fx = 2.0 / 3.0 * y * w32;
                  j.fy = 8.0 / 15.0 * y * w52 + 2.0 / 3.0 * y * y * w32 * wy;
                  j.fxx = sw;
                  j.fxy = 2.0 / 3.0 * w32 + y * sw * wy;
                  j.fyy = 8.0 / 15.0 * w52 + 8.0 / 3.0 * y * w32 * wy +
                          y * y * sw * wy * wy + 2.0 / 3.0 * y * y * w32 * wyy;
                  j.p = 1 / (2 * y * sw);
                  j.a = wy / (2 * sw);
                  j.b = 2 * sw * wy + y * wy * wy / (2 * sw) + y * sw * wyy;
                  j.q = 4 * w32 * wy + 6 * y * sw * wy * wy + 4 * y * w32 * wyy +
                        y * y * wy * wy * wy / (2 * sw) +
                        3 * y * y * sw * wy * wyy + 2.0 / 3.0 * y * y * w32 * wyyy;
                  return j;
                });
}

// quartic for row 6: y t^4/2 + y^2 t - x = 0
double row6_quartic(double t, double x, double y) {
  return y * t * t * t * t / 2 + y * y * t - x;
}

bool row6_has_unique_root(Point2 pt, double lo, double hi) {
  const int K = 64;
  int crossings = 0;
  double prev = row6_quartic(lo, pt.x, pt.y);
  for (int k = 1; k <= K; ++k) {
    double t = lo + (hi - lo) * k / K;
    double cur = row6_quartic(t, pt.x, pt.y);
    if (prev == 0.0 || (prev < 0.0) != (cur < 0.0)) ++crossings;
    prev = cur;
  }
  if (prev == 0.0) ++crossings;
  return crossings == 1;
}

ClosedFormSolution make_table6_f() {
  return simple("table6_f", EquationForm::Ass1,
                [](Point2 pt) {
                  return std::abs(pt.y) > 1e-12 && row6_has_unique_root(pt, 0.0, 4.0);
                },
                [](Point2 pt) { return eval_implicit_row6(pt).jet; });
}

// ---- the six table rows, F-form (t occupies the x slot) -------------------

ClosedFormSolution make_table1_F() {
  // F = t^2 y^2/4 + t^5/60
  return simple("table1_F", EquationForm::Ass3,
                [](Point2) { return true; },
                [](Point2 pt) {
                  const double t = pt.x, y = pt.y;
                  Jet3 j;
                  j.f = t * t * y * y / 4 + std::pow(t, 5) / 60;
                  j.fx = t * y * y / 2 + std::pow(t, 4) / 12;
                  j.fy = t * t * y / 2;
                  j.fxx = y * y / 2 + t * t * t / 3;
                  j.fxy = t * y;
                  j.fyy = t * t / 2;
                  j.p = t * t;
                  j.a = y;
                  j.b = t;
                  j.q = 0;
                  return j;
                });
}

ClosedFormSolution make_table2_F() {
  // F = y e^t - y^4/24
  return simple("table2_F", EquationForm::Ass3,
                [](Point2) { return true; },
                [](Point2 pt) {
                  const double t = pt.x, y = pt.y, et = std::exp(t);
                  Jet3 j;
                  j.f = y * et - std::pow(y, 4) / 24;
                  j.fx = y * et;
                  j.fy = et - y * y * y / 6;
                  j.fxx = y * et;
                  j.fxy = et;
                  j.fyy = -y * y / 2;
                  j.p = y * et;
                  j.a = et;
                  j.b = 0;
                  j.q = -y;
                  return j;
                });
}

ClosedFormSolution make_table3_F() {
  // F = y^2 e^t/4 + e^{2t}/32 - y^4/48
  return simple("table3_F", EquationForm::Ass3,
                [](Point2) { return true; },
                [](Point2 pt) {
                  const double t = pt.x, y = pt.y;
                  const double et = std::exp(t), e2t = std::exp(2 * t);
                  Jet3 j;
                  j.f = y * y * et / 4 + e2t / 32 - std::pow(y, 4) / 48;
                  j.fx = y * y * et / 4 + e2t / 16;
                  j.fy = y * et / 2 - y * y * y / 12;
                  j.fxx = y * y * et / 4 + e2t / 8;
                  j.fxy = y * et / 2;
                  j.fyy = et / 2 - y * y / 4;
                  j.p = y * y * et / 4 + e2t / 4;
                  j.a = y * et / 2;
                  j.b = et / 2;
                  j.q = -y / 2;
                  return j;
                });
}

ClosedFormSolution make_table4_F() {
  // F = t^2 ln y / 2
  return simple("table4_F", EquationForm::Ass3,
                [](Point2 pt) { return pt.y > 0.0; },
                [](Point2 pt) {
                  const double t = pt.x, y = pt.y, ly = std::log(y);
                  Jet3 j;
                  j.f = t * t * ly / 2;
                  j.fx = t * ly;
                  j.fy = t * t / (2 * y);
                  j.fxx = ly;
                  j.fxy = t / y;
                  j.fyy = -t * t / (2 * y * y);
                  j.p = 0;
                  j.a = 1 / y;
                  j.b = -t / (y * y);
                  j.q = t * t / (y * y * y);
                  return j;
                });
}

ClosedFormSolution make_table5_F() {
  // F = y^3 t/6 + y^2 t^3/6 + t^7/210
  return simple("table5_F", EquationForm::Ass3,
                [](Point2) { return true; },
                [](Point2 pt) {
                  const double t = pt.x, y = pt.y;
                  Jet3 j;
                  j.f = y * y * y * t / 6 + y * y * t * t * t / 6 + std::pow(t, 7) / 210;
                  j.fx = y * y * y / 6 + y * y * t * t / 2 + std::pow(t, 6) / 30;
                  j.fy = y * y * t / 2 + y * t * t * t / 3;
                  j.fxx = y * y * t + std::pow(t, 5) / 5;
                  j.fxy = y * y / 2 + y * t * t;
                  j.fyy = y * t + t * t * t / 3;
                  j.p = y * y + std::pow(t, 4);
                  j.a = 2 * y * t;
                  j.b = y + t * t;
                  j.q = t;
                  return j;
                });
}

ClosedFormSolution make_table6_F() {
  // F = y^3 t^2/6 + y^2 t^5/20 + t^11/3960
  return simple("table6_F", EquationForm::Ass3,
                [](Point2) { return true; },
                [](Point2 pt) {
                  const double t = pt.x, y = pt.y;
                  Jet3 j;
                  j.f = y * y * y * t * t / 6 + y * y * std::pow(t, 5) / 20 +
                        std::pow(t, 11) / 3960;
                  j.fx = y * y * y * t / 3 + y * y * std::pow(t, 4) / 4 +
                         std::pow(t, 10) / 360;
                  j.fy = y * y * t * t / 2 + y * std::pow(t, 5) / 10;
                  j.fxx = y * y * y / 3 + y * y * t * t * t + std::pow(t, 9) / 36;
                  j.fxy = y * y * t + y * std::pow(t, 4) / 2;
                  j.fyy = y * t * t + std::pow(t, 5) / 10;
                  j.p = 3 * y * y * t * t + std::pow(t, 8) / 4;
                  j.a = y * y + 2 * y * t * t * t;
                  j.b = 2 * y * t + std::pow(t, 4) / 2;
                  j.q = t * t;
                  return j;
                });
}

// ---- rarefaction -----------------------------------------------------------

// phi together with its first three antiderivatives (psi''' = phi).
struct PhiBundle {
  std::function<double(double)> phi, psi2, psi1, psi0;
  std::function<bool(double)> in_domain;
};

PhiBundle build_phi_bundle(const PhiSpec& spec) {
  using Kind = PhiSpec::Kind;
  PhiBundle b;
  const double k0 = spec.k0, k1 = spec.k1;
  switch (spec.kind) {
    case Kind::Affine:
      b.phi = [=](double s) { return k0 + k1 * s; };
      b.psi2 = [=](double s) { return k0 * s + k1 * s * s / 2; };
      b.psi1 = [=](double s) { return k0 * s * s / 2 + k1 * s * s * s / 6; };
      b.psi0 = [=](double s) {
        return k0 * s * s * s / 6 + k1 * s * s * s * s / 24;
      };
      b.in_domain = [](double) { return true; };
      break;
    case Kind::Exponential: {
      if (k1 == 0.0) {
        b.phi = [=](double) { return k0; };
        b.psi2 = [=](double s) { return k0 * s; };
        b.psi1 = [=](double s) { return k0 * s * s / 2; };
        b.psi0 = [=](double s) { return k0 * s * s * s / 6; };
      } else {
        b.phi = [=](double s) { return k0 * std::exp(k1 * s); };
        b.psi2 = [=](double s) { return k0 / k1 * std::exp(k1 * s); };
        b.psi1 = [=](double s) { return k0 / (k1 * k1) * std::exp(k1 * s); };
        b.psi0 = [=](double s) { return k0 / (k1 * k1 * k1) * std::exp(k1 * s); };
      }
      b.in_domain = [](double) { return true; };
      break;
    }
    case Kind::Tabulated: {
      auto spl = std::make_shared<detail::PiecewisePoly>(
          detail::natural_cubic_spline(spec.s_samples, spec.phi_samples));
      auto i1 = std::make_shared<detail::PiecewisePoly>(spl->antiderivative());
      auto i2 = std::make_shared<detail::PiecewisePoly>(i1->antiderivative());
      auto i3 = std::make_shared<detail::PiecewisePoly>(i2->antiderivative());
      const double lo = spl->lo(), hi = spl->hi();
      b.phi = [spl](double s) { return spl->eval(s); };
      b.psi2 = [i1](double s) { return i1->eval(s); };
      b.psi1 = [i2](double s) { return i2->eval(s); };
      b.psi0 = [i3](double s) { return i3->eval(s); };
      b.in_domain = [lo, hi](double s) { return s >= lo && s <= hi; };
      break;
    }
  }
  return b;
}

}  // namespace

PhiSpec PhiSpec::tabulated(std::vector<double> s, std::vector<double> phi) {
  PhiSpec p;
  p.kind = Kind::Tabulated;
  p.s_samples = std::move(s);
  p.phi_samples = std::move(phi);
  return p;
}

ClosedFormSolution make_rarefaction(double c, double mu, const PhiSpec& phi) {
  if (mu == 0.0) throw std::invalid_argument("rarefaction: mu must be nonzero");
  PhiBundle B = build_phi_bundle(phi);
  const double cq = c * c * mu - c / mu;  // coefficient of y^3/6
  auto dom = [c, in = B.in_domain](Point2 pt) { return in(pt.x + c * pt.y); };
  auto raw = [=](Point2 pt) {
    const double x = pt.x, y = pt.y, s = x + c * y;
    const double ph = B.phi(s), p2 = B.psi2(s), p1 = B.psi1(s), p0 = B.psi0(s);
    Jet3 j;
    j.f = p0 + mu / 2 * x * x * y - x * y * y / (2 * mu) + cq * y * y * y / 6;
    j.fx = p1 + mu * x * y - y * y / (2 * mu);
    j.fy = c * p1 + mu * x * x / 2 - x * y / mu + cq * y * y / 2;
    j.fxx = p2 + mu * y;
    j.fxy = c * p2 + mu * x - y / mu;
    j.fyy = c * c * p2 - x / mu + cq * y;
    j.p = ph;
    j.a = c * ph + mu;
    j.b = c * c * ph - 1 / mu;
    j.q = c * c * c * ph + cq;
    return j;
  };
  ClosedFormSolution s = simple("rarefaction", EquationForm::Ass1, dom, raw);
  s.params = {{"c", c}, {"mu", mu}};
  return s;
}

// ---- implicit row 6 --------------------------------------------------------

Row6Point eval_implicit_row6(Point2 pt, double bracket_lo, double bracket_hi) {
  const double x = pt.x, y = pt.y;
  if (std::abs(y) <= 1e-12)
    throw std::domain_error("eval_implicit_row6: y must be nonzero");

  // bracket scan: exactly one sign change required
  const int K = 64;
  double ta = bracket_lo, tb = bracket_hi;
  int crossings = 0;
  double root_lo = 0.0, root_hi = 0.0;
  double prev_t = ta, prev_g = row6_quartic(ta, x, y);
  for (int k = 1; k <= K; ++k) {
    const double t = ta + (tb - ta) * k / K;
    const double g = row6_quartic(t, x, y);
    if (prev_g == 0.0) {
      ++crossings;
      root_lo = root_hi = prev_t;
    } else if ((prev_g < 0.0) != (g < 0.0)) {
      ++crossings;
      root_lo = prev_t;
      root_hi = t;
    }
    prev_t = t;
    prev_g = g;
  }
  if (prev_g == 0.0) {
    ++crossings;
    root_lo = root_hi = prev_t;
  }
  if (crossings == 0)
    throw std::domain_error("eval_implicit_row6: no real root in bracket");
  if (crossings > 1)
    throw std::runtime_error(
        "eval_implicit_row6: multiple roots in bracket; narrow the bracket");

  // safeguarded Newton
  const double tol = 1e-12 * std::max(std::abs(x), 1.0);
  double lo = root_lo, hi = root_hi;
  double t = 0.5 * (lo + hi);
  double glo = row6_quartic(lo, x, y);
  for (int it = 0; it < 200; ++it) {
    const double g = row6_quartic(t, x, y);
    if (std::abs(g) <= tol) break;
    if ((g < 0.0) == (glo < 0.0)) {
      lo = t;
      glo = g;
    } else {
      hi = t;
    }
    const double dg = 2 * y * t * t * t + y * y;
    double tn = (dg != 0.0) ? t - g / dg : t;
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    t = tn;
  }
  if (std::abs(row6_quartic(t, x, y)) > 10 * tol)
    throw std::runtime_error("eval_implicit_row6: Newton did not converge");

  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double den = y * y + 2 * y * t3;  // = dx/dt at fixed y
  if (den == 0.0)
    throw std::runtime_error("eval_implicit_row6: dx/dt vanishes at the root");
  const double num = 2 * y * t + t4 / 2;  // = -dx/dy at fixed t

  Jet3 j;
  j.p = 1 / den;
  j.a = -num / den;
  j.b = num * num / den - t2;
  j.q = (1 + j.a * j.b) * den;  // q = (1 + ab)/p
  j.fxx = t;
  j.fxy = -(y * t2 + t5 / 10);
  j.fyy = y * y * y / 3 + y * y * t3 + std::pow(t, 9) / 36;
  j.f = std::pow(y, 4) * t3 / 6 + 7 * std::pow(y, 3) * std::pow(t, 6) / 30 +
        4 * y * y * std::pow(t, 9) / 45 + std::pow(y, 5) / 60;
  j.fx = y * y * t2 / 2 + 2 * y * t5 / 5;
  {
    // f_y = (d f/d y)|_t + (d f/d t) t_y with t_y = a
    const double df_dy = 2.0 / 3.0 * std::pow(y, 3) * t3 +
                         0.7 * y * y * std::pow(t, 6) +
                         8.0 / 45.0 * y * std::pow(t, 9) + std::pow(y, 4) / 12;
    const double df_dt = std::pow(y, 4) * t2 / 2 +
                         1.4 * std::pow(y, 3) * t5 +
                         0.8 * y * y * std::pow(t, 8);
    j.fy = df_dy + df_dt * j.a;
  }
  return {t, j};
}

// ---- revolution ------------------------------------------------------------

namespace {

struct RevScalars {
  double G, H, Gp, Hp, Gpp, Hpp;
};

RevScalars rev_scalars(double eps, double nu, double mu, int branch, double xi) {
  if (xi == 0.0) throw std::domain_error("revolution: xi = xy must be nonzero");
  const double s = branch >= 0 ? 1.0 : -1.0;
  const double xi2 = xi * xi, xi3 = xi2 * xi, xi4 = xi3 * xi;
  const double D = (eps * xi + nu) / xi2;
  const double P = (mu - xi) / (2 * xi2);
  const double disc = D * D + 4 * P;
  if (disc < 0.0)
    throw std::domain_error("revolution: negative discriminant at xi=" +
                            std::to_string(xi));
  const double S = std::sqrt(disc);
  if (S == 0.0)
    throw std::domain_error("revolution: double root of the quadratic system");
  const double Dp = -(eps * xi + 2 * nu) / xi3;
  const double Pp = -mu / xi3 + 1 / (2 * xi2);
  const double Dpp = (2 * eps * xi + 6 * nu) / xi4;
  const double Ppp = 3 * mu / xi4 - 1 / xi3;
  const double Sp = (D * Dp + 2 * Pp) / S;
  const double Spp = (Dp * Dp + D * Dpp + 2 * Ppp) / S -
                     (D * Dp + 2 * Pp) * (D * Dp + 2 * Pp) / (S * S * S);
  RevScalars r;
  r.G = (-D + s * S) / 2;
  r.Gp = (-Dp + s * Sp) / 2;
  r.Gpp = (-Dpp + s * Spp) / 2;
  r.H = r.G + D;
  r.Hp = r.Gp + Dp;
  r.Hpp = r.Gpp + Dpp;
  return r;
}

}  // namespace

RevolutionScalars revolution_scalars(double eps, double nu, double mu,
                                     int branch, double xi) {
  RevScalars r = rev_scalars(eps, nu, mu, branch, xi);
  return {r.G, r.H, r.Gp, r.Hp, r.Gpp, r.Hpp};
}

namespace {

ClosedFormSolution make_revolution(const std::map<std::string, double>& pm) {
  const double eps = get(pm, "epsilon", 0.0);
  const double nu = get(pm, "nu", 0.0);
  const double mu = get(pm, "mu", 1.0);
  const int branch = get(pm, "branch", 1.0) >= 0 ? 1 : -1;
  const double xi_lo = get(pm, "xi_min", mu / 20);
  const double xi_hi = get(pm, "xi_max", 0.95 * mu);
  if (!(xi_lo > 0.0 && xi_hi > xi_lo))
    throw std::invalid_argument("revolution: need 0 < xi_min < xi_max");

  // F'' = G in the gauge s1 = s2 = 0, r1 = eps, r2 = -nu; quadrature for
  // F and F' (the lower jet only).
  const double anchor = 0.5 * (xi_lo + xi_hi);
  auto rhs = [eps, nu, mu, branch](const detail::State3& y, detail::State3& dy,
                                   double xi) {
    dy[0] = y[1];
    dy[1] = rev_scalars(eps, nu, mu, branch, xi).G;
    dy[2] = 0.0;
  };
  auto table = std::make_shared<detail::OdeTable>(rhs, detail::State3{0.0, 0.0, 0.0},
                                                  anchor, xi_lo, xi_hi);
  const double r1 = eps, r2 = -nu;

  auto dom = [xi_lo, xi_hi](Point2 pt) {
    if (!(pt.x > 0.0 && pt.y > 0.0)) return false;
    const double xi = pt.x * pt.y;
    return xi >= xi_lo && xi <= xi_hi;
  };
  auto raw = [=](Point2 pt) {
    const double x = pt.x, y = pt.y, xi = x * y, ly = std::log(y);
    const RevScalars r = rev_scalars(eps, nu, mu, branch, xi);
    const detail::State3 Fs = table->eval(xi);  // (F, F', unused)
    const double F = Fs[0], Fp = Fs[1], Fpp = r.G;
    const double alpha = 2 * r.G + xi * r.Gp, beta = 2 * r.H + xi * r.Hp;
    Jet3 j;
    j.f = F + (r1 * xi + r2) * ly;
    j.fx = Fp * y + r1 * y * ly;
    j.fy = Fp * x + r1 * x * ly + (r1 * xi + r2) / y;
    j.fxx = Fpp * y * y;
    j.fxy = Fpp * xi + Fp + r1 * ly + r1;
    j.fyy = Fpp * x * x + r1 * x / y - r2 / (y * y);
    j.p = y * y * y * r.Gp;
    j.a = y * alpha;
    j.b = x * beta;
    j.q = x * x * x * r.Hp;
    return j;
  };
  ClosedFormSolution s = simple("revolution", EquationForm::Ass1, dom, raw);
  s.params = {{"epsilon", eps}, {"nu", nu},       {"mu", mu},
              {"branch", double(branch)}, {"xi_min", xi_lo}, {"xi_max", xi_hi}};
  return s;
}

// ---- ansatz1: f = y^{3/2} sqrt(-8x^3/9 + alpha x^2 + beta x + gamma) ------

ClosedFormSolution make_ansatz1(const std::map<std::string, double>& pm) {
  const double al = get(pm, "alpha", 1.0);
  const double be = get(pm, "beta", 1.0);
  const double ga = get(pm, "gamma", 1.0);
  auto gfun = [=](double x) {
    return -8.0 / 9.0 * x * x * x + al * x * x + be * x + ga;
  };
  auto dom = [=](Point2 pt) { return pt.y > 0.0 && gfun(pt.x) > 0.0; };
  auto raw = [=](Point2 pt) {
    const double x = pt.x, y = pt.y;
    const double g = gfun(x);
    const double gp = -8.0 / 3.0 * x * x + 2 * al * x + be;
    const double gpp = -16.0 / 3.0 * x + 2 * al;
    const double gppp = -16.0 / 3.0;
    const double sg = std::sqrt(g), g32 = g * sg, g52 = g * g * sg;
    const double F = sg;
    const double F1 = gp / (2 * sg);
    const double F2 = gpp / (2 * sg) - gp * gp / (4 * g32);
    const double F3 = gppp / (2 * sg) - 0.75 * gp * gpp / g32 +
                      0.375 * gp * gp * gp / g52;
    const double sy = std::sqrt(y), y32 = y * sy;
    Jet3 j;
    j.f = y32 * F;
    j.fx = y32 * F1;
    j.fy = 1.5 * sy * F;
    j.fxx = y32 * F2;
    j.fxy = 1.5 * sy * F1;
    j.fyy = 0.75 * F / sy;
    j.p = y32 * F3;
    j.a = 1.5 * sy * F2;
    j.b = 0.75 * F1 / sy;
    j.q = -0.375 * F / y32;
    return j;
  };
  ClosedFormSolution s = simple("ansatz1", EquationForm::Ass1, dom, raw);
  s.params = {{"alpha", al}, {"beta", be}, {"gamma", ga}};
  return s;
}

// ---- ansatz2: f = y^3 F(x/y), 6FF''' - 4xi F'F''' + 2xi F''^2 - 2F'F'' = 1

ClosedFormSolution make_ansatz2(const std::map<std::string, double>& pm) {
  const double xi0 = get(pm, "xi0", 1.0);
  const double F0 = get(pm, "F0", 1.0);
  const double F1 = get(pm, "F1", 0.1);
  const double F2 = get(pm, "F2", 0.2);
  const double lo = get(pm, "xi_min", 0.5);
  const double hi = get(pm, "xi_max", 2.0);
  auto rhs = [](const detail::State3& y, detail::State3& dy, double xi) {
    const double den = 6 * y[0] - 4 * xi * y[1];
    if (std::abs(den) < 1e-12)
      throw std::runtime_error("ansatz2: ODE coefficient 6F - 4 xi F' vanished");
    dy[0] = y[1];
    dy[1] = y[2];
    dy[2] = (1 + 2 * y[1] * y[2] - 2 * xi * y[2] * y[2]) / den;
  };
  auto table = std::make_shared<detail::OdeTable>(rhs, detail::State3{F0, F1, F2},
                                                  xi0, lo, hi);
  auto dom = [lo, hi](Point2 pt) {
    if (!(pt.y > 0.0)) return false;
    const double xi = pt.x / pt.y;
    return xi >= lo && xi <= hi;
  };
  auto raw = [table](Point2 pt) {
    const double x = pt.x, y = pt.y, xi = x / y;
    const detail::State3 s = table->eval(xi);
    const double f0 = s[0], f1 = s[1], f2 = s[2], f3 = table->deriv(xi)[2];
    Jet3 j;
    j.f = y * y * y * f0;
    j.fx = y * y * f1;
    j.fy = 3 * y * y * f0 - x * y * f1;
    j.fxx = y * f2;
    j.fxy = 2 * y * f1 - x * f2;
    j.fyy = 6 * y * f0 - 4 * x * f1 + x * x / y * f2;
    j.p = f3;
    j.a = f2 - xi * f3;
    j.b = 2 * f1 - 2 * xi * f2 + xi * xi * f3;
    j.q = 6 * f0 - 6 * xi * f1 + 3 * xi * xi * f2 - xi * xi * xi * f3;
    return j;
  };
  ClosedFormSolution s = simple("ansatz2", EquationForm::Ass1, dom, raw);
  s.params = {{"xi0", xi0}, {"F0", F0},     {"F1", F1},
              {"F2", F2},   {"xi_min", lo}, {"xi_max", hi}};
  return s;
}

// ---- self-similar: f = (xy)^{3/2} F(x y^mu) --------------------------------

struct SelfSimBrackets {
  double Ph, Qh, Ah, Bh;  // F'''-free parts of the four bracket polynomials
};

SelfSimBrackets selfsim_brackets(double mu, double z, double F, double F1,
                                 double F2) {
  const double z2 = z * z;
  SelfSimBrackets b;
  b.Ph = -0.375 * F + 2.25 * z * F1 + 4.5 * z2 * F2;
  b.Qh = -0.375 * F + (mu * mu * mu + 1.5 * mu * mu - 0.25 * mu) * z * F1 +
         (3 * mu * mu * mu + 1.5 * mu * mu) * z2 * F2;
  b.Ah = 1.125 * F + (4.5 + 3.75 * mu) * z * F1 + (1.5 + 5 * mu) * z2 * F2;
  b.Bh = 1.125 * F + (0.75 + 5 * mu + 2.5 * mu * mu) * z * F1 +
         (2 * mu + 4.5 * mu * mu) * z2 * F2;
  return b;
}

ClosedFormSolution make_selfsimilar(const std::map<std::string, double>& pm) {
  const double mu = get(pm, "mu", 0.5);
  const double z0 = get(pm, "z0", 1.0);
  const double F0 = get(pm, "F0", 1.0);
  const double F1 = get(pm, "F1", 0.1);
  const double F2 = get(pm, "F2", 0.2);
  const double lo = get(pm, "z_min", 0.6);
  const double hi = get(pm, "z_max", 1.6);
  auto rhs = [mu](const detail::State3& y, detail::State3& dy, double z) {
    const SelfSimBrackets b = selfsim_brackets(mu, z, y[0], y[1], y[2]);
    const double den =
        z * z * z * (mu * mu * mu * b.Ph + b.Qh - mu * mu * b.Ah - mu * b.Bh);
    if (std::abs(den) < 1e-12)
      throw std::runtime_error("selfsimilar: ODE denominator vanished");
    dy[0] = y[1];
    dy[1] = y[2];
    dy[2] = (1 - b.Ph * b.Qh + b.Ah * b.Bh) / den;
  };
  auto table = std::make_shared<detail::OdeTable>(rhs, detail::State3{F0, F1, F2},
                                                  z0, lo, hi);
  auto dom = [lo, hi, mu](Point2 pt) {
    if (!(pt.x > 0.0 && pt.y > 0.0)) return false;
    const double z = pt.x * std::pow(pt.y, mu);
    return z >= lo && z <= hi;
  };
  auto raw = [table, mu](Point2 pt) {
    const double x = pt.x, y = pt.y;
    const double z = x * std::pow(y, mu);
    const detail::State3 s = table->eval(z);
    const double f0 = s[0], f1 = s[1], f2 = s[2], f3 = table->deriv(z)[2];
    const SelfSimBrackets b = selfsim_brackets(mu, z, f0, f1, f2);
    const double z3 = z * z * z;
    const double Pb = b.Ph + z3 * f3;
    const double Qb = b.Qh + mu * mu * mu * z3 * f3;
    const double Ab = b.Ah + mu * z3 * f3;
    const double Bb = b.Bh + mu * mu * z3 * f3;
    const double sx = std::sqrt(x), sy = std::sqrt(y);
    const double x12 = sx, x32 = x * sx, x52 = x * x * sx, x72 = x * x * x * sx;
    const double y12 = sy, y32 = y * sy;
    const double ymu = std::pow(y, mu);
    Jet3 j;
    j.f = x32 * y32 * f0;
    j.fx = 1.5 * x12 * y32 * f0 + x32 * y32 * ymu * f1;
    j.fy = 1.5 * x32 * y12 * f0 + mu * x52 * ymu * y12 * f1;
    j.fxx = 0.75 / x12 * y32 * f0 + 3 * x12 * y32 * ymu * f1 +
            x32 * y32 * ymu * ymu * f2;
    j.fxy = 2.25 * x12 * y12 * f0 + (1.5 + 2.5 * mu) * x32 * ymu * y12 * f1 +
            mu * x52 * ymu * ymu * y12 * f2;
    j.fyy = 0.75 * x32 / y12 * f0 + (2 * mu + mu * mu) * x52 * ymu / y12 * f1 +
            mu * mu * x72 * ymu * ymu / y12 * f2;
    j.p = y32 / x32 * Pb;
    j.q = x32 / y32 * Qb;
    j.a = y12 / x12 * Ab;
    j.b = x12 / y12 * Bb;
    return j;
  };
  ClosedFormSolution s = simple("selfsimilar", EquationForm::Ass1, dom, raw);
  s.params = {{"mu", mu},   {"z0", z0},    {"F0", F0},
              {"F1", F1},   {"F2", F2},    {"z_min", lo},
              {"z_max", hi}};
  return s;
}

ClosedFormSolution make_rarefaction_from_params(
    const std::map<std::string, double>& pm) {
  const double c = get(pm, "c", 1.0);
  const double mu = get(pm, "mu", 1.0);
  const int shape = static_cast<int>(get(pm, "phi_shape", 0.0));
  const double k0 = get(pm, "phi_k0", 2.0);
  const double k1 = get(pm, "phi_k1", 0.25);
  PhiSpec spec = shape == 1 ? PhiSpec::exponential(k0, k1) : PhiSpec::affine(k0, k1);
  ClosedFormSolution s = make_rarefaction(c, mu, spec);
  s.params["phi_shape"] = shape;
  s.params["phi_k0"] = k0;
  s.params["phi_k1"] = k1;
  return s;
}

}  // namespace

std::function<double(double)> make_phi(const PhiSpec& spec) {
  return build_phi_bundle(spec).phi;
}

std::vector<SolutionInfo> list_solutions() {
  return {
      {"trivial_cubic", EquationForm::Ass1, {}},
      {"convex_trivial", EquationForm::Ass2, {}},
      {"table1_f", EquationForm::Ass1, {}},
      {"table2_f", EquationForm::Ass1, {}},
      {"table3_f", EquationForm::Ass1, {}},
      {"table4_f", EquationForm::Ass1, {}},
      {"table5_f", EquationForm::Ass1, {}},
      {"table6_f", EquationForm::Ass1, {}},
      {"table1_F", EquationForm::Ass3, {}},
      {"table2_F", EquationForm::Ass3, {}},
      {"table3_F", EquationForm::Ass3, {}},
      {"table4_F", EquationForm::Ass3, {}},
      {"table5_F", EquationForm::Ass3, {}},
      {"table6_F", EquationForm::Ass3, {}},
      {"rarefaction", EquationForm::Ass1,
       {"c", "mu", "phi_shape", "phi_k0", "phi_k1"}},
      {"revolution", EquationForm::Ass1,
       {"epsilon", "nu", "mu", "branch", "xi_min", "xi_max"}},
      {"ansatz1", EquationForm::Ass1, {"alpha", "beta", "gamma"}},
      {"ansatz2", EquationForm::Ass1,
       {"xi0", "F0", "F1", "F2", "xi_min", "xi_max"}},
      {"selfsimilar", EquationForm::Ass1,
       {"mu", "z0", "F0", "F1", "F2", "z_min", "z_max"}},
  };
}

ClosedFormSolution make(const std::string& id,
                        const std::map<std::string, double>& params) {
  if (id == "trivial_cubic") return make_trivial_cubic();
  if (id == "convex_trivial") return make_convex_trivial();
  if (id == "table1_f") return make_table1_f();
  if (id == "table2_f") return make_table2_f();
  if (id == "table3_f") return make_table3_f();
  if (id == "table4_f") return make_table4_f();
  if (id == "table5_f") return make_table5_f();
  if (id == "table6_f") return make_table6_f();
  if (id == "table1_F") return make_table1_F();
  if (id == "table2_F") return make_table2_F();
  if (id == "table3_F") return make_table3_F();
  if (id == "table4_F") return make_table4_F();
  if (id == "table5_F") return make_table5_F();
  if (id == "table6_F") return make_table6_F();
  if (id == "rarefaction") return make_rarefaction_from_params(params);
  if (id == "revolution") return make_revolution(params);
  if (id == "ansatz1") return make_ansatz1(params);
  if (id == "ansatz2") return make_ansatz2(params);
  if (id == "selfsimilar") return make_selfsimilar(params);
  throw std::invalid_argument("catalog: unknown solution id '" + id + "'");
}

Jet3 eval_jet(const std::string& id, const std::map<std::string, double>& params,
              Point2 pt) {
  return make(id, params).eval(pt);
}

std::vector<std::pair<std::string, std::string>> solution_pairs() {
  return {{"table1_F", "table1_f"}, {"table2_F", "table2_f"},
          {"table3_F", "table3_f"}, {"table4_F", "table4_f"},
          {"table5_F", "table5_f"}, {"table6_F", "table6_f"}};
}

ScalarField2D sample_field(const ClosedFormSolution& s, const Grid2D& g) {
  return ScalarField2D::sample(g, [&](Point2 pt) { return s.eval(pt).f; });
}

}  // namespace catalog
}  // namespace centroflat
