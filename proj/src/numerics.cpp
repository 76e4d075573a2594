#include "centroflat/numerics.hpp"

#include <algorithm>

namespace centroflat {

namespace {

using cplx = std::complex<double>;

cplx newton_polish(cplx z, double c3, double c2, double c1, double c0) {
  cplx f = ((c3 * z + c2) * z + c1) * z + c0;
  cplx df = (3.0 * c3 * z + 2.0 * c2) * z + c1;
  if (std::abs(df) > 0.0) {
    cplx step = f / df;
    if (std::abs(step) < 1.0 + std::abs(z)) z -= step;
  }
  return z;
}

}  // namespace

CubicRoots cubic_roots(double c3, double c2, double c1, double c0) {
  if (c3 == 0.0)
    throw std::invalid_argument("cubic_roots: leading coefficient is zero");

  // Depressed form t^3 + pt + q with z = t - A/3.
  const double A = c2 / c3, B = c1 / c3, C = c0 / c3;
  const double p = B - A * A / 3.0;
  const double q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
  const double shift = -A / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;

  std::array<cplx, 3> z;
  if (disc > 0.0) {
    // one real root, one conjugate pair
    const double sd = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sd);
    const double w = std::cbrt(-q / 2.0 - sd);
    const double t0 = u + w;
    z[0] = cplx(t0 + shift, 0.0);
    const double re = -t0 / 2.0 + shift;
    const double im = std::sqrt(3.0) / 2.0 * (u - w);
    z[1] = cplx(re, im);
    z[2] = cplx(re, -im);
  } else {
    // three real roots (trigonometric form)
    const double r = std::sqrt(std::max(-p / 3.0, 0.0));
    double phi = 0.0;
    if (r > 0.0) {
      double cosphi = std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0);
      phi = std::acos(cosphi);
    }
    for (int k = 0; k < 3; ++k)
      z[k] = cplx(2.0 * r * std::cos((phi + 2.0 * M_PI * k) / 3.0) + shift, 0.0);
  }

  for (auto& zk : z) zk = newton_polish(zk, c3, c2, c1, c0);

  CubicRoots out;
  int nr = 0;
  std::array<double, 3> reals{};
  std::array<cplx, 3> cplxs{};
  int nc = 0;
  for (const auto& zk : z) {
    if (std::abs(zk.imag()) < 1e-9)
      reals[nr++] = zk.real();
    else
      cplxs[nc++] = zk;
  }
  std::sort(reals.begin(), reals.begin() + nr);
  // force exact conjugacy of a surviving pair
  if (nc == 2) {
    const double re = 0.5 * (cplxs[0].real() + cplxs[1].real());
    const double im = 0.5 * (std::abs(cplxs[0].imag()) + std::abs(cplxs[1].imag()));
    cplxs[0] = cplx(re, im);
    cplxs[1] = cplx(re, -im);
  }
  out.n_real = nr;
  for (int k = 0; k < nr; ++k) out.z[k] = cplx(reals[k], 0.0);
  for (int k = 0; k < nc; ++k) out.z[nr + k] = cplxs[k];
  return out;
}

Jet3 finite_diff_jet(const ScalarField2D& f, int i, int j) {
  const Grid2D& g = f.grid;
  if (i < 2 || j < 2 || i > g.nx - 3 || j > g.ny - 3)
    throw std::out_of_range("finite_diff_jet: stencil does not fit (need 2 interior cells)");

  const double hx = g.dx, hy = g.dy;
  auto F = [&](int di, int dj) { return f.at(i + di, j + dj); };

  Jet3 out;
  out.f = F(0, 0);
  out.fx = (F(1, 0) - F(-1, 0)) / (2 * hx);
  out.fy = (F(0, 1) - F(0, -1)) / (2 * hy);
  out.fxx = (F(1, 0) - 2 * F(0, 0) + F(-1, 0)) / (hx * hx);
  out.fyy = (F(0, 1) - 2 * F(0, 0) + F(0, -1)) / (hy * hy);
  out.fxy = (F(1, 1) - F(1, -1) - F(-1, 1) + F(-1, -1)) / (4 * hx * hy);

  out.p = (-F(-2, 0) + 2 * F(-1, 0) - 2 * F(1, 0) + F(2, 0)) / (2 * hx * hx * hx);
  out.q = (-F(0, -2) + 2 * F(0, -1) - 2 * F(0, 1) + F(0, 2)) / (2 * hy * hy * hy);
  // mixed thirds: central y-derivative of the f_xx stencil and vice versa
  auto fxx_at = [&](int dj) {
    return (F(1, dj) - 2 * F(0, dj) + F(-1, dj)) / (hx * hx);
  };
  auto fyy_at = [&](int di) {
    return (F(di, 1) - 2 * F(di, 0) + F(di, -1)) / (hy * hy);
  };
  out.a = (fxx_at(1) - fxx_at(-1)) / (2 * hy);
  out.b = (fyy_at(1) - fyy_at(-1)) / (2 * hx);
  return out;
}

ScalarField2D exterior_derivative(const OneFormField& w) {
  const Grid2D& g = w.grid();
  ScalarField2D out(g, kNaV);
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      const double dcy_dx = (w.cy.at(i + 1, j) - w.cy.at(i - 1, j)) / (2 * g.dx);
      const double dcx_dy = (w.cx.at(i, j + 1) - w.cx.at(i, j - 1)) / (2 * g.dy);
      out.at(i, j) = dcy_dx - dcx_dy;
    }
  return out;
}

}  // namespace centroflat
