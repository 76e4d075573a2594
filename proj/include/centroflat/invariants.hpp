#pragma once

#include "centroflat/core.hpp"
#include "centroflat/wdvv.hpp"

namespace centroflat {

/// Pointwise centroaffine invariants. metric holds (g11, g12, g22) of
/// g11 dx^2 + 2 g12 dx dy + g22 dy^2; cubic holds the coefficients of
/// (dx^3, dx^2 dy, dx dy^2, dy^3); chebyshev is (T1, T2).
struct CentroaffineData {
  std::array<double, 3> metric{};
  std::array<double, 4> cubic{};
  std::array<double, 2> chebyshev{};
  double K = 0.0;
};

/// Flat-coordinate invariants: metric = eta, C = d^3 f, T = (1/2) d(lap f),
/// K = 0.
CentroaffineData centroaffine_from_jet(const Jet3& j, MetricCase kase);

/// Fields of a general asymptotic parametrization: metric 2 e^u dx dy and
/// the four cubic data (p, a, b, q). All five share one grid.
struct AsymptoticFields {
  ScalarField2D u, a, b, p, q;

  const Grid2D& grid() const { return u.grid; }
  void validate() const;
};

struct Comp4Residual {
  ScalarField2D ay_bx;       // a_y - b_x
  ScalarField2D codazzi_x;   // a_x - p_y - a u_x - p u_y
  ScalarField2D codazzi_y;   // b_y - q_x - q u_x - b u_y
  ScalarField2D gauss;       // p q - a b - e^u (K + 1)
  ScalarField2D K;           // -e^{-u} u_xy, central differences
};

Comp4Residual comp4_residual(const AsymptoticFields& f);

ScalarField2D tzitzeica_residual(const ScalarField2D& u);

/// Coefficients (p, a, -b, -q) of the conjugate-direction cubic
/// p dx^3 + a dx^2 dy - b dx dy^2 - q dy^3.
std::array<double, 4> characteristic_cubic(const Jet3& j);

struct WebScalars {
  double r_w, s_w, t_w;  // ab - 9pq, b^2 + 3aq, a^2 + 3bp
};
WebScalars web_scalars(const Jet3& j);
WebScalars web_scalars(double p, double a, double b, double q);

/// Connection form of the characteristic 3-web,
/// w = -3 e^u/(r^2-4st) ((r K_x - 2t K_y) dx + (r K_y - 2s K_x) dy).
/// Throws when |r^2 - 4st| drops below denom_floor at an evaluated node,
/// reporting the offending nodes. Valid two rings inside the boundary.
OneFormField web_connection_form(const AsymptoticFields& f,
                                 double denom_floor = 1e-12);

/// Web curvature Omega = d omega; zero exactly when the web is hexagonal.
ScalarField2D web_curvature(const AsymptoticFields& f,
                            double denom_floor = 1e-12);

struct MetricField {
  ScalarField2D g11, g12, g22;
};

/// Metric recovery from a position field via
/// g_ij = det(r_ij, r_x, r_y) / det(r, r_x, r_y), derivatives by central
/// differences. Throws when the frame determinant falls below
/// det_floor_scale times the local row-norm product.
MetricField invariants_from_position(const VectorField3& r,
                                     double det_floor_scale = 1e-12);

/// Graph-hypersurface metric -d^2 f / (x f_x + y f_y - f); throws when the
/// Legendre denominator vanishes.
std::array<double, 3> graph_metric(const Jet3& j, Point2 pt);

}  // namespace centroflat
