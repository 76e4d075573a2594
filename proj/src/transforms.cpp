#include "centroflat/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "centroflat/numerics.hpp"
#include "centroflat/parallel.hpp"

namespace centroflat {

Ass1Image ass3_to_ass1(const Jet3& F, Point2 ty) {
  // slots of F: fxx = F_tt, fxy = F_ty, fyy = F_yy, p = F_ttt, a = F_tty,
  // b = F_tyy, q = F_yyy
  if (F.a == 0.0)
    throw std::domain_error("ass3_to_ass1: F_tty = 0, reparametrization degenerates");
  Ass1Image out;
  out.x = F.fxy;
  Jet3& j = out.jet;
  j.p = 1.0 / F.a;
  j.a = -F.b / F.a;
  j.b = F.b * F.b / F.a - F.q;
  j.q = (1.0 + j.a * j.b) / j.p;
  j.fxx = ty.x;          // = t
  j.fxy = -F.fyy;
  j.fyy = F.fxx;
  j.fx = ty.x * out.x - F.fy;
  j.f = 0.0;
  j.fy = 0.0;
  return out;
}

Ass1Image ass3_to_ass1(const ClosedFormSolution& F_sol, Point2 ty) {
  if (F_sol.form != EquationForm::Ass3)
    throw std::invalid_argument("ass3_to_ass1: solution is not in ass3 form");
  return ass3_to_ass1(F_sol.eval(ty), ty);
}

CharTriple char_variables(double p, double a, double b) {
  if (p == 0.0)
    throw std::domain_error("char_variables: p = 0 (root product vanishes)");
  const CubicRoots r = cubic_roots(1.0, -2.0 * a, a * a - p * b, -p);
  CharTriple t;
  t.real_flag = (r.n_real == 3);
  if (t.real_flag) {
    std::array<double, 3> w = {r.z[0].real(), r.z[1].real(), r.z[2].real()};
    std::sort(w.begin(), w.end(), std::greater<double>());
    t.w1 = w[0];
    t.w2 = w[1];
    t.w3 = w[2];
  } else {
    t.w1 = r.z[0];
    t.w2 = r.z[1];
    t.w3 = r.z[2];
  }
  return t;
}

CharTriple char_variables(const Jet3& j) {
  return char_variables(j.p, j.a, j.b);
}

CharTriple chamber_sort(const CharTriple& t) {
  if (!t.real_flag)
    throw std::domain_error("chamber_sort: triple is not real");
  std::array<double, 3> w = {t.w1.real(), t.w2.real(), t.w3.real()};
  std::array<double, 3> u;
  for (int k = 0; k < 3; ++k) {
    if (w[k] == 0.0) throw std::domain_error("chamber_sort: zero root");
    u[k] = 1.0 / w[k];
  }
  std::sort(u.begin(), u.end());  // ascending: u1 = min, u3 = mid, u2 = max
  CharTriple out;
  out.real_flag = true;
  out.w1 = 1.0 / u[0];
  out.w2 = 1.0 / u[2];
  out.w3 = 1.0 / u[1];
  return out;
}

namespace {

std::array<double, 3> require_real_distinct(const CharTriple& t,
                                            const char* who) {
  if (!t.real_flag)
    throw std::domain_error(std::string(who) + ": roots are not all real");
  std::array<double, 3> w = {t.w1.real(), t.w2.real(), t.w3.real()};
  if (w[0] == w[1] || w[0] == w[2] || w[1] == w[2])
    throw std::domain_error(std::string(who) + ": coincident roots");
  if (w[0] == 0.0 || w[1] == 0.0 || w[2] == 0.0)
    throw std::domain_error(std::string(who) + ": zero root");
  return w;
}

}  // namespace

CharForms char_coordinate_forms(const CharTriple& t) {
  const auto w = require_real_distinct(t, "char_coordinate_forms");
  const double w1 = w[0], w2 = w[1], w3 = w[2];
  const double twop = 2.0 * w1 * w2 * w3;
  CharForms f;
  f.dxi = {w2 - w3, (w2 - w3) * (w2 + w3 - w1) / twop};
  f.deta = {w1 - w3, (w1 - w3) * (w1 + w3 - w2) / twop};
  f.dthird = {w2 - w1, (w2 - w1) * (w2 + w1 - w3) / twop};
  return f;
}

CharMetric char_metric(const CharTriple& t) {
  const auto w = require_real_distinct(t, "char_metric");
  const double w1 = w[0], w2 = w[1], w3 = w[2];
  CharMetric m;
  m.E_c = w1 * w2 * w3 * (w2 - w1 - w3) /
          ((w2 - w1) * (w2 - w1) * (w2 - w3) * (w2 - w3));
  m.F_c = w1 * w2 * w3 * w3 /
          ((w1 - w2) * (w1 - w2) * (w1 - w3) * (w2 - w3));
  m.G_c = w1 * w2 * w3 * (w1 - w2 - w3) /
          ((w1 - w2) * (w1 - w2) * (w1 - w3) * (w1 - w3));
  return m;
}

CharH char_h_components(const CharTriple& t) {
  const auto w = require_real_distinct(t, "char_h_components");
  const double w1 = w[0], w2 = w[1], w3 = w[2];
  const double sigma = w1 * w2 + w1 * w3 + w2 * w3;
  CharH h;
  h.h111 = (w2 * w2 - sigma) / ((w2 - w1) * (w2 - w3));
  h.h222 = (w1 * w1 - sigma) / ((w1 - w2) * (w1 - w3));
  h.h112 = -w2 * w3 / ((w1 - w2) * (w1 - w3));
  h.h212 = -w1 * w3 / ((w2 - w1) * (w2 - w3));
  return h;
}

So21Result so21_forms(const ScalarField2D& u1, const ScalarField2D& u2,
                      const ScalarField2D& u3) {
  const Grid2D& g = u1.grid;
  if (!g.same_as(u2.grid) || !g.same_as(u3.grid))
    throw std::invalid_argument("so21_forms: fields on different grids");

  So21Result out{OneFormField(g), OneFormField(g), OneFormField(g),
                 ScalarField2D(g, kNaV), ScalarField2D(g, kNaV),
                 ScalarField2D(g, kNaV), {}};
  for (OneFormField* w : {&out.w1, &out.w2, &out.w3}) {
    std::fill(w->cx.v.begin(), w->cx.v.end(), kNaV);
    std::fill(w->cy.v.begin(), w->cy.v.end(), kNaV);
  }

  auto dcomp = [&](const ScalarField2D& f, int i, int j, bool xdir) {
    return xdir ? (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * g.dx)
                : (f.at(i, j + 1) - f.at(i, j - 1)) / (2 * g.dy);
  };

  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      const double a1 = u1.at(i, j), a2 = u2.at(i, j), a3 = u3.at(i, j);
      const double s1 = (a2 - a1) * (a3 - a1);
      const double s2 = (a2 - a1) * (a2 - a3);
      const double s3 = (a3 - a1) * (a2 - a3);
      if (!(s1 > 0.0) || !(s2 > 0.0) || !(s3 > 0.0)) {
        out.masked.emplace_back(i, j);
        continue;
      }
      const double d1 = 2 * (a2 - a3) * std::sqrt(s1);
      const double d2 = 2 * (a3 - a1) * std::sqrt(s2);
      const double d3 = 2 * (a2 - a1) * std::sqrt(s3);
      for (int comp = 0; comp < 2; ++comp) {
        const bool xdir = (comp == 0);
        const double du1 = dcomp(u1, i, j, xdir);
        const double du2 = dcomp(u2, i, j, xdir);
        const double du3 = dcomp(u3, i, j, xdir);
        const double n1 = (a2 - a3) * du1 + (a1 - a3) * du2 + (a2 - a1) * du3;
        const double n2 = (a2 - a3) * du1 + (a1 - a3) * du2 + (a1 - a2) * du3;
        const double n3 = (a2 - a3) * du1 + (a3 - a1) * du2 + (a2 - a1) * du3;
        ScalarField2D& c1 = xdir ? out.w1.cx : out.w1.cy;
        ScalarField2D& c2 = xdir ? out.w2.cx : out.w2.cy;
        ScalarField2D& c3 = xdir ? out.w3.cx : out.w3.cy;
        c1.at(i, j) = n1 / d1;
        c2.at(i, j) = n2 / d2;
        c3.at(i, j) = n3 / d3;
      }
    }

  const ScalarField2D dw1 = exterior_derivative(out.w1);
  const ScalarField2D dw2 = exterior_derivative(out.w2);
  const ScalarField2D dw3 = exterior_derivative(out.w3);
  auto wedge = [](const OneFormField& A, const OneFormField& B, int i, int j) {
    return A.cx.at(i, j) * B.cy.at(i, j) - A.cy.at(i, j) * B.cx.at(i, j);
  };
  for (int j = 2; j < g.ny - 2; ++j)
    for (int i = 2; i < g.nx - 2; ++i) {
      out.res1.at(i, j) = dw1.at(i, j) - wedge(out.w2, out.w3, i, j);
      out.res2.at(i, j) = dw2.at(i, j) - wedge(out.w3, out.w1, i, j);
      out.res3.at(i, j) = dw3.at(i, j) - wedge(out.w2, out.w1, i, j);
    }
  return out;
}

PotentialResult integrate_closed_form(const OneFormField& w, double tol) {
  const Grid2D& g = w.grid();
  const double closed = linf(exterior_derivative(w));
  if (closed > tol)
    throw std::runtime_error(
        "integrate_closed_form: form is not closed on this data (|d w| = " +
        std::to_string(closed) + " > tol)");
  PotentialResult out{ScalarField2D(g), closed};
  for (int i = 1; i < g.nx; ++i)
    out.potential.at(i, 0) =
        out.potential.at(i - 1, 0) +
        0.5 * (w.cx.at(i - 1, 0) + w.cx.at(i, 0)) * g.dx;
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out.potential.at(i, j) =
          out.potential.at(i, j - 1) +
          0.5 * (w.cy.at(i, j - 1) + w.cy.at(i, j)) * g.dy;
  return out;
}

WavePointField threewave_extract(const So21Result& forms,
                                 const OneFormField& dxi,
                                 const OneFormField& deta) {
  const Grid2D& g = dxi.grid();
  WavePointField out{ScalarField2D(g, kNaV), ScalarField2D(g, kNaV),
                     ScalarField2D(g, kNaV)};
  auto ratio = [](double wx, double wy, double dx_, double dy_) {
    const double den = dx_ * dx_ + dy_ * dy_;
    return (wx * dx_ + wy * dy_) / den;
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      out.p1.at(i, j) = ratio(forms.w1.cx.at(i, j), forms.w1.cy.at(i, j),
                              dxi.cx.at(i, j), dxi.cy.at(i, j));
      out.p2.at(i, j) = ratio(forms.w2.cx.at(i, j), forms.w2.cy.at(i, j),
                              deta.cx.at(i, j), deta.cy.at(i, j));
      out.p3.at(i, j) = ratio(forms.w3.cx.at(i, j), forms.w3.cy.at(i, j),
                              dxi.cx.at(i, j) - deta.cx.at(i, j),
                              dxi.cy.at(i, j) - deta.cy.at(i, j));
    }
  return out;
}

namespace {

double bilinear(const ScalarField2D& f, Point2 pt) {
  const Grid2D& g = f.grid;
  double sx = (pt.x - g.x0) / g.dx, sy = (pt.y - g.y0) / g.dy;
  int i = std::clamp(static_cast<int>(std::floor(sx)), 0, g.nx - 2);
  int j = std::clamp(static_cast<int>(std::floor(sy)), 0, g.ny - 2);
  const double tx = sx - i, ty = sy - j;
  return (1 - tx) * (1 - ty) * f.at(i, j) + tx * (1 - ty) * f.at(i + 1, j) +
         (1 - tx) * ty * f.at(i, j + 1) + tx * ty * f.at(i + 1, j + 1);
}

struct InteriorRange {
  double lo, hi;
};

InteriorRange inset_range(const ScalarField2D& f, double inset) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : f.v)
    if (!is_nav(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const double span = hi - lo;
  return {lo + inset * span, hi - inset * span};
}

}  // namespace

CharResampler::CharResampler(const ScalarField2D& xi, const ScalarField2D& eta,
                             const OneFormField& dxi, const OneFormField& deta,
                             int nt, double inset)
    : source_(xi.grid) {
  const Grid2D& g = xi.grid;
  const InteriorRange rx = inset_range(xi, inset), ry = inset_range(eta, inset);
  target_ = Grid2D::from_box(rx.lo, rx.hi, ry.lo, ry.hi, nt, nt);
  preimage_.assign(target_.size(), Point2{});
  ok_.assign(target_.size(), 0);

  const double xlo = g.x0, xhi = g.x(g.nx - 1);
  const double ylo = g.y0, yhi = g.y(g.ny - 1);
  Point2 col_start{0.5 * (xlo + xhi), 0.5 * (ylo + yhi)};
  for (int tj = 0; tj < target_.ny; ++tj) {
    Point2 guess = col_start;
    for (int ti = 0; ti < target_.nx; ++ti) {
      const double txi = target_.x(ti), teta = target_.y(tj);
      Point2 z = guess;
      bool conv = false;
      for (int it = 0; it < 80; ++it) {
        const double fx = bilinear(xi, z) - txi;
        const double fy = bilinear(eta, z) - teta;
        if (std::abs(fx) + std::abs(fy) < 1e-12) {
          conv = true;
          break;
        }
        // Jacobian rows are the conservation-law coefficients
        const double j11 = bilinear(dxi.cx, z), j12 = bilinear(dxi.cy, z);
        const double j21 = bilinear(deta.cx, z), j22 = bilinear(deta.cy, z);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        z.x -= (j22 * fx - j12 * fy) / det;
        z.y -= (-j21 * fx + j11 * fy) / det;
        z.x = std::clamp(z.x, xlo, xhi);
        z.y = std::clamp(z.y, ylo, yhi);
      }
      const std::size_t n = target_.idx(ti, tj);
      if (conv && z.x > xlo && z.x < xhi && z.y > ylo && z.y < yhi) {
        preimage_[n] = z;
        ok_[n] = 1;
      } else {
        ++failures_;
      }
      guess = z;
      if (ti == 0) col_start = z;
    }
  }
}

ScalarField2D CharResampler::resample(const ScalarField2D& src) const {
  if (!src.grid.same_as(source_))
    throw std::invalid_argument("CharResampler: source grid mismatch");
  ScalarField2D out(target_, kNaV);
  for (std::size_t n = 0; n < preimage_.size(); ++n)
    if (ok_[n]) out.v[n] = bilinear(src, preimage_[n]);
  return out;
}

ThreeWaveResidual threewave_residual(const WaveField& w) {
  const Grid2D& g = w.p1.grid;
  if (!g.same_as(w.p2.grid) || !g.same_as(w.p3.grid))
    throw std::invalid_argument("threewave_residual: fields on different grids");
  ThreeWaveResidual r{ScalarField2D(g, kNaV), ScalarField2D(g, kNaV),
                      ScalarField2D(g, kNaV)};
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      auto dXi = [&](const ScalarField2D& f) {
        return (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * g.dx);
      };
      auto dEta = [&](const ScalarField2D& f) {
        return (f.at(i, j + 1) - f.at(i, j - 1)) / (2 * g.dy);
      };
      r.r1.at(i, j) = dEta(w.p1) - w.p2.at(i, j) * w.p3.at(i, j);
      r.r2.at(i, j) = dXi(w.p2) - w.p1.at(i, j) * w.p3.at(i, j);
      r.r3.at(i, j) = dXi(w.p3) + dEta(w.p3) - w.p1.at(i, j) * w.p2.at(i, j);
    }
  return r;
}

ChainResult run_threewave_chain(const ScalarField2D& p, const ScalarField2D& a,
                                const ScalarField2D& b, const ChainOptions& opt) {
  const Grid2D& g = p.grid;
  if (!g.same_as(a.grid) || !g.same_as(b.grid))
    throw std::invalid_argument("run_threewave_chain: fields on different grids");

  ChainResult out;
  out.u1 = ScalarField2D(g, kNaV);
  out.u2 = ScalarField2D(g, kNaV);
  out.u3 = ScalarField2D(g, kNaV);
  out.dxi = OneFormField(g);
  out.deta = OneFormField(g);

  std::size_t masked = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      CharTriple t = char_variables(p.at(i, j), a.at(i, j), b.at(i, j));
      if (!t.real_flag) {
        ++masked;
        out.dxi.cx.at(i, j) = out.dxi.cy.at(i, j) = kNaV;
        out.deta.cx.at(i, j) = out.deta.cy.at(i, j) = kNaV;
        continue;
      }
      t = chamber_sort(t);
      const CharForms f = char_coordinate_forms(t);
      out.u1.at(i, j) = 1.0 / t.w1.real();
      out.u2.at(i, j) = 1.0 / t.w2.real();
      out.u3.at(i, j) = 1.0 / t.w3.real();
      out.dxi.cx.at(i, j) = f.dxi[0];
      out.dxi.cy.at(i, j) = f.dxi[1];
      out.deta.cx.at(i, j) = f.deta[0];
      out.deta.cy.at(i, j) = f.deta[1];
    }
  out.masked_nodes = masked;
  if (masked > 0)
    throw std::domain_error(
        "run_threewave_chain: complex characteristic roots at " +
        std::to_string(masked) + " node(s); the chain needs a strictly "
        "hyperbolic region");

  out.xi = integrate_closed_form(out.dxi, opt.closedness_tol).potential;
  out.eta = integrate_closed_form(out.deta, opt.closedness_tol).potential;
  out.so21 = so21_forms(out.u1, out.u2, out.u3);
  out.wave_xy = threewave_extract(out.so21, out.dxi, out.deta);

  CharResampler rs(out.xi, out.eta, out.dxi, out.deta, opt.target_n, opt.inset);
  out.char_grid = rs.target();
  // fill the FD boundary ring of the extracted fields before interpolation
  auto filled = [&](const ScalarField2D& f) {
    ScalarField2D h = f;
    for (int i = 0; i < g.nx; ++i) {
      h.at(i, 0) = h.at(i, 1);
      h.at(i, g.ny - 1) = h.at(i, g.ny - 2);
    }
    for (int j = 0; j < g.ny; ++j) {
      h.at(0, j) = h.at(1, j);
      h.at(g.nx - 1, j) = h.at(g.nx - 2, j);
    }
    return h;
  };
  out.wave.p1 = rs.resample(filled(out.wave_xy.p1));
  out.wave.p2 = rs.resample(filled(out.wave_xy.p2));
  out.wave.p3 = rs.resample(filled(out.wave_xy.p3));
  out.residual = threewave_residual(out.wave);
  out.residual_linf = {linf(out.residual.r1), linf(out.residual.r2),
                       linf(out.residual.r3)};

  // system (26) residuals on the characteristic grid
  const ScalarField2D u1c = rs.resample(out.u1);
  const ScalarField2D u2c = rs.resample(out.u2);
  const ScalarField2D u3c = rs.resample(out.u3);
  const Grid2D& tg = rs.target();
  ScalarField2D e1(tg, kNaV), e2(tg, kNaV), e3(tg, kNaV);
  for (int j = 1; j < tg.ny - 1; ++j)
    for (int i = 1; i < tg.nx - 1; ++i) {
      auto dXi = [&](const ScalarField2D& f) {
        return (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * tg.dx);
      };
      auto dEta = [&](const ScalarField2D& f) {
        return (f.at(i, j + 1) - f.at(i, j - 1)) / (2 * tg.dy);
      };
      const double a1 = u1c.at(i, j), a2 = u2c.at(i, j), a3 = u3c.at(i, j);
      e1.at(i, j) = (a3 - a2) * dXi(u1c) - (a3 - a1) * dEta(u2c);
      e2.at(i, j) = (a2 - a3) * (dXi(u1c) + dEta(u1c)) - (a1 - a2) * dEta(u3c);
      e3.at(i, j) = (a1 - a3) * (dXi(u2c) + dEta(u2c)) - (a2 - a1) * dXi(u3c);
    }
  out.sys26_linf = {linf(e1), linf(e2), linf(e3)};
  return out;
}

}  // namespace centroflat
