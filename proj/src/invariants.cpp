#include "centroflat/invariants.hpp"

#include <cmath>
#include <sstream>

#include "centroflat/numerics.hpp"
#include "centroflat/parallel.hpp"

namespace centroflat {

CentroaffineData centroaffine_from_jet(const Jet3& j, MetricCase kase) {
  CentroaffineData d;
  d.cubic = {j.p, 3 * j.a, 3 * j.b, j.q};
  d.K = 0.0;
  if (kase == MetricCase::Hyperbolic) {
    d.metric = {0.0, 1.0, 0.0};
    d.chebyshev = {j.a, j.b};
  } else {
    d.metric = {1.0, 0.0, 1.0};
    d.chebyshev = {0.5 * (j.p + j.b), 0.5 * (j.a + j.q)};
  }
  return d;
}

void AsymptoticFields::validate() const {
  const Grid2D& g = u.grid;
  if (!g.same_as(a.grid) || !g.same_as(b.grid) || !g.same_as(p.grid) ||
      !g.same_as(q.grid))
    throw std::invalid_argument("AsymptoticFields: grids differ");
}

Comp4Residual comp4_residual(const AsymptoticFields& f) {
  f.validate();
  const Grid2D& g = f.grid();
  Comp4Residual r{ScalarField2D(g, kNaV), ScalarField2D(g, kNaV),
                  ScalarField2D(g, kNaV), ScalarField2D(g, kNaV),
                  ScalarField2D(g, kNaV)};
  parallel_for(1, g.ny - 1, [&](int j) {
    for (int i = 1; i < g.nx - 1; ++i) {
      auto dX = [&](const ScalarField2D& h) {
        return (h.at(i + 1, j) - h.at(i - 1, j)) / (2 * g.dx);
      };
      auto dY = [&](const ScalarField2D& h) {
        return (h.at(i, j + 1) - h.at(i, j - 1)) / (2 * g.dy);
      };
      const double u = f.u.at(i, j), eu = std::exp(u);
      const double uxy = (f.u.at(i + 1, j + 1) - f.u.at(i + 1, j - 1) -
                          f.u.at(i - 1, j + 1) + f.u.at(i - 1, j - 1)) /
                         (4 * g.dx * g.dy);
      const double K = -std::exp(-u) * uxy;
      r.K.at(i, j) = K;
      r.ay_bx.at(i, j) = dY(f.a) - dX(f.b);
      r.codazzi_x.at(i, j) =
          dX(f.a) - dY(f.p) - f.a.at(i, j) * dX(f.u) - f.p.at(i, j) * dY(f.u);
      r.codazzi_y.at(i, j) =
          dY(f.b) - dX(f.q) - f.q.at(i, j) * dX(f.u) - f.b.at(i, j) * dY(f.u);
      r.gauss.at(i, j) = f.p.at(i, j) * f.q.at(i, j) -
                         f.a.at(i, j) * f.b.at(i, j) - eu * (K + 1.0);
    }
  });
  return r;
}

ScalarField2D tzitzeica_residual(const ScalarField2D& u) {
  const Grid2D& g = u.grid;
  ScalarField2D r(g, kNaV);
  parallel_for(1, g.ny - 1, [&](int j) {
    for (int i = 1; i < g.nx - 1; ++i) {
      const double uxy = (u.at(i + 1, j + 1) - u.at(i + 1, j - 1) -
                          u.at(i - 1, j + 1) + u.at(i - 1, j - 1)) /
                         (4 * g.dx * g.dy);
      const double uu = u.at(i, j);
      r.at(i, j) = uxy - std::exp(uu) + std::exp(-2 * uu);
    }
  });
  return r;
}

std::array<double, 4> characteristic_cubic(const Jet3& j) {
  return {j.p, j.a, -j.b, -j.q};
}

WebScalars web_scalars(double p, double a, double b, double q) {
  return {a * b - 9 * p * q, b * b + 3 * a * q, a * a + 3 * b * p};
}

WebScalars web_scalars(const Jet3& j) { return web_scalars(j.p, j.a, j.b, j.q); }

namespace {

// K field (ring 1), then its gradient (ring 2).
struct KData {
  ScalarField2D K, Kx, Ky;
};

KData k_data(const AsymptoticFields& f) {
  const Grid2D& g = f.grid();
  KData d{ScalarField2D(g, kNaV), ScalarField2D(g, kNaV), ScalarField2D(g, kNaV)};
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      const double uxy = (f.u.at(i + 1, j + 1) - f.u.at(i + 1, j - 1) -
                          f.u.at(i - 1, j + 1) + f.u.at(i - 1, j - 1)) /
                         (4 * g.dx * g.dy);
      d.K.at(i, j) = -std::exp(-f.u.at(i, j)) * uxy;
    }
  for (int j = 2; j < g.ny - 2; ++j)
    for (int i = 2; i < g.nx - 2; ++i) {
      d.Kx.at(i, j) = (d.K.at(i + 1, j) - d.K.at(i - 1, j)) / (2 * g.dx);
      d.Ky.at(i, j) = (d.K.at(i, j + 1) - d.K.at(i, j - 1)) / (2 * g.dy);
    }
  return d;
}

}  // namespace

OneFormField web_connection_form(const AsymptoticFields& f, double denom_floor) {
  f.validate();
  const Grid2D& g = f.grid();
  const KData kd = k_data(f);
  OneFormField w(g);
  for (auto& v : w.cx.v) v = kNaV;
  for (auto& v : w.cy.v) v = kNaV;

  std::vector<std::pair<int, int>> offending;
  for (int j = 2; j < g.ny - 2; ++j)
    for (int i = 2; i < g.nx - 2; ++i) {
      const WebScalars s =
          web_scalars(f.p.at(i, j), f.a.at(i, j), f.b.at(i, j), f.q.at(i, j));
      const double den = s.r_w * s.r_w - 4 * s.s_w * s.t_w;
      if (std::abs(den) <= denom_floor) {
        offending.emplace_back(i, j);
        continue;
      }
      const double fac = -3 * std::exp(f.u.at(i, j)) / den;
      w.cx.at(i, j) = fac * (s.r_w * kd.Kx.at(i, j) - 2 * s.t_w * kd.Ky.at(i, j));
      w.cy.at(i, j) = fac * (s.r_w * kd.Ky.at(i, j) - 2 * s.s_w * kd.Kx.at(i, j));
    }
  if (!offending.empty()) {
    std::ostringstream msg;
    msg << "web_connection_form: |r^2-4st| <= " << denom_floor << " at "
        << offending.size() << " node(s), first (" << offending[0].first << ", "
        << offending[0].second << ")";
    throw std::domain_error(msg.str());
  }
  return w;
}

ScalarField2D web_curvature(const AsymptoticFields& f, double denom_floor) {
  return exterior_derivative(web_connection_form(f, denom_floor));
}

MetricField invariants_from_position(const VectorField3& r,
                                     double det_floor_scale) {
  const Grid2D& g = r.grid;
  MetricField m{ScalarField2D(g, kNaV), ScalarField2D(g, kNaV),
                ScalarField2D(g, kNaV)};
  auto norm3 = [](const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  };
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      std::array<double, 3> rx, ry, rxx, ryy, rxy;
      const auto& c = r.at(i, j);
      for (int k = 0; k < 3; ++k) {
        rx[k] = (r.at(i + 1, j)[k] - r.at(i - 1, j)[k]) / (2 * g.dx);
        ry[k] = (r.at(i, j + 1)[k] - r.at(i, j - 1)[k]) / (2 * g.dy);
        rxx[k] = (r.at(i + 1, j)[k] - 2 * c[k] + r.at(i - 1, j)[k]) / (g.dx * g.dx);
        ryy[k] = (r.at(i, j + 1)[k] - 2 * c[k] + r.at(i, j - 1)[k]) / (g.dy * g.dy);
        rxy[k] = (r.at(i + 1, j + 1)[k] - r.at(i + 1, j - 1)[k] -
                  r.at(i - 1, j + 1)[k] + r.at(i - 1, j - 1)[k]) /
                 (4 * g.dx * g.dy);
      }
      const double den = det3(c, rx, ry);
      const double scale = norm3(c) * norm3(rx) * norm3(ry);
      if (std::abs(den) < det_floor_scale * scale)
        throw std::domain_error(
            "invariants_from_position: degenerate frame at node (" +
            std::to_string(i) + ", " + std::to_string(j) + ")");
      m.g11.at(i, j) = det3(rxx, rx, ry) / den;
      m.g12.at(i, j) = det3(rxy, rx, ry) / den;
      m.g22.at(i, j) = det3(ryy, rx, ry) / den;
    }
  return m;
}

std::array<double, 3> graph_metric(const Jet3& j, Point2 pt) {
  const double F = pt.x * j.fx + pt.y * j.fy - j.f;
  if (F == 0.0)
    throw std::domain_error("graph_metric: Legendre denominator vanishes");
  return {-j.fxx / F, -j.fxy / F, -j.fyy / F};
}

}  // namespace centroflat
