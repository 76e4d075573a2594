#pragma once

#include <functional>

#include "centroflat/catalog.hpp"
#include "centroflat/core.hpp"
#include "centroflat/wdvv.hpp"

namespace centroflat {

using JetFunc = std::function<Jet3(Point2)>;

/// psi_x = lambda Ax psi, psi_y = lambda Ay psi for psi = (lambda r, r_x, r_y)
/// stacked as rows.
struct LaxPair {
  Mat3 Ax, Ay;
};

LaxPair lax_matrices(const Jet3& j, MetricCase kase = MetricCase::Hyperbolic);

struct FrameField {
  Grid2D grid;
  double lambda = 1.0;
  std::vector<Mat3> psi;
  VectorField3 position;
  /// max nodewise Frobenius norm of D_y(Ax psi) - D_x(Ay psi), central
  /// differences on the computed frame; the grid-level compatibility measure.
  double cross_defect = 0.0;

  Mat3& at(int i, int j) { return psi[grid.idx(i, j)]; }
  const Mat3& at(int i, int j) const { return psi[grid.idx(i, j)]; }
};

/// Marches psi along the first grid row in x, then along each column in y
/// (or the transposed order). Classical RK4 with 4 substeps per cell,
/// coefficient matrices re-evaluated at substep points. Positions come from
/// row 0 of psi divided by lambda. lambda = 0 keeps psi constant and
/// produces the affine plane through the initial data, reading row 0 of
/// psi0 as the initial position.
FrameField integrate_frame(const JetFunc& jet, double lambda, const Grid2D& g,
                           const Mat3& psi0 = Mat3::identity(),
                           MetricCase kase = MetricCase::Hyperbolic,
                           bool transpose_order = false);
FrameField integrate_frame(const ClosedFormSolution& sol, double lambda,
                           const Grid2D& g, const Mat3& psi0 = Mat3::identity(),
                           MetricCase kase = MetricCase::Hyperbolic,
                           bool transpose_order = false);

struct RectLoop {
  double x0, y0, x1, y1;
};

/// ||psi_loop - psi_start||_F / ||psi_start||_F after integrating around the
/// closed rectangle counterclockwise with steps_per_edge RK4 steps per edge.
double holonomy_defect(const JetFunc& jet, double lambda, const RectLoop& loop,
                       int steps_per_edge,
                       MetricCase kase = MetricCase::Hyperbolic,
                       const Mat3& psi0 = Mat3::identity());
double holonomy_defect(const ClosedFormSolution& sol, double lambda,
                       const RectLoop& loop, int steps_per_edge,
                       MetricCase kase = MetricCase::Hyperbolic);

/// Gauge phi = e^{-(2/3) lambda f_xy} psi removing the trace of the
/// connection.
FrameField traceless_gauge(const FrameField& f, const JetFunc& jet);

// Traceless connection matrices (phi_x = lambda traceless_ax(j) phi, ...).
Mat3 traceless_ax(const Jet3& j);
Mat3 traceless_ay(const Jet3& j);

/// Loop-algebra membership of the traceless connection: returns
/// max(|| -T A^t(-lambda) T - A(lambda) ||, |tr A|) over both coefficient
/// matrices, T the permutation swapping rows/columns 2 and 3.
double loop_algebra_check(const Jet3& j, double lambda);
/// Same check on caller-supplied traceless matrices (negative controls).
double loop_algebra_check_matrices(const Mat3& ax_hat, const Mat3& ay_hat,
                                   double lambda);

struct ProjectiveData {
  double beta, gamma, V, W;
};

/// beta = f_xxx, gamma = f_yyy, V = a^2/2 + p b, W = b^2/2 + q a.
ProjectiveData projective_data(const Jet3& j);

struct ProjectiveResidual {
  ScalarField2D balance;  // beta_yyy - 2 beta_y W - beta W_y - (gamma_xxx - 2 gamma_x V - gamma V_x)
  ScalarField2D wx;       // W_x - 2 gamma beta_y - beta gamma_y
  ScalarField2D vy;       // V_y - 2 beta gamma_x - gamma beta_x
  ScalarField2D extra;    // beta_yyy - gamma_xxx
};

ProjectiveResidual projective_residual(const ScalarField2D& beta,
                                       const ScalarField2D& gamma,
                                       const ScalarField2D& V,
                                       const ScalarField2D& W);

}  // namespace centroflat
