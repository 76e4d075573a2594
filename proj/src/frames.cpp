#include "centroflat/frames.hpp"

#include <cmath>

#include "centroflat/parallel.hpp"

namespace centroflat {

LaxPair lax_matrices(const Jet3& j, MetricCase kase) {
  LaxPair L;
  if (kase == MetricCase::Hyperbolic) {
    L.Ax = Mat3::from_rows({0, 1, 0}, {0, j.a, j.p}, {1, j.b, j.a});
    L.Ay = Mat3::from_rows({0, 0, 1}, {1, j.b, j.a}, {0, j.q, j.b});
  } else {
    L.Ax = Mat3::from_rows({0, 1, 0}, {1, j.p, j.a}, {0, j.a, j.b});
    L.Ay = Mat3::from_rows({0, 0, 1}, {0, j.a, j.b}, {1, j.b, j.q});
  }
  return L;
}

namespace {

Mat3 coeff(const JetFunc& jet, Point2 pt, MetricCase kase, bool xdir) {
  const LaxPair L = lax_matrices(jet(pt), kase);
  return xdir ? L.Ax : L.Ay;
}

// One RK4 step of psi' = lambda A(s) psi along x (xdir) or y at fixed other
// coordinate.
Mat3 rk4_step(const JetFunc& jet, double lambda, MetricCase kase, bool xdir,
              Point2 from, double h, const Mat3& psi) {
  auto at = [&](double s) {
    return xdir ? Point2{from.x + s, from.y} : Point2{from.x, from.y + s};
  };
  const Mat3 A0 = coeff(jet, at(0.0), kase, xdir) * lambda;
  const Mat3 Ah = coeff(jet, at(h / 2), kase, xdir) * lambda;
  const Mat3 A1 = coeff(jet, at(h), kase, xdir) * lambda;
  const Mat3 k1 = A0 * psi;
  const Mat3 k2 = Ah * (psi + k1 * (h / 2));
  const Mat3 k3 = Ah * (psi + k2 * (h / 2));
  const Mat3 k4 = A1 * (psi + k3 * h);
  return psi + (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);
}

Mat3 march(const JetFunc& jet, double lambda, MetricCase kase, bool xdir,
           Point2 from, double length, int substeps, const Mat3& psi0) {
  Mat3 psi = psi0;
  const double h = length / substeps;
  Point2 pt = from;
  for (int s = 0; s < substeps; ++s) {
    psi = rk4_step(jet, lambda, kase, xdir, pt, h, psi);
    if (xdir)
      pt.x += h;
    else
      pt.y += h;
  }
  return psi;
}

constexpr int kSubsteps = 4;  // per grid cell

}  // namespace

FrameField integrate_frame(const JetFunc& jet, double lambda, const Grid2D& g,
                           const Mat3& psi0, MetricCase kase,
                           bool transpose_order) {
  if (std::abs(psi0.det()) < 1e-12)
    throw std::invalid_argument("integrate_frame: singular initial frame");

  FrameField out;
  out.grid = g;
  out.lambda = lambda;
  out.psi.assign(g.size(), Mat3{});
  out.position = VectorField3(g);

  if (lambda == 0.0) {
    // psi_x = psi_y = 0: constant frame, affine plane through the initial
    // data; row 0 of psi0 is read as the position at the corner.
    const auto r0 = psi0.row(0), rx = psi0.row(1), ry = psi0.row(2);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        out.at(i, j) = psi0;
        for (int k = 0; k < 3; ++k)
          out.position.at(i, j)[k] =
              r0[k] + (g.x(i) - g.x0) * rx[k] + (g.y(j) - g.y0) * ry[k];
      }
    out.cross_defect = 0.0;
    return out;
  }

  if (!transpose_order) {
    out.at(0, 0) = psi0;
    for (int i = 0; i + 1 < g.nx; ++i)
      out.at(i + 1, 0) = march(jet, lambda, kase, true, g.node(i, 0), g.dx,
                               kSubsteps, out.at(i, 0));
    parallel_for(0, g.nx, [&](int i) {
      for (int j = 0; j + 1 < g.ny; ++j)
        out.at(i, j + 1) = march(jet, lambda, kase, false, g.node(i, j), g.dy,
                                 kSubsteps, out.at(i, j));
    });
  } else {
    out.at(0, 0) = psi0;
    for (int j = 0; j + 1 < g.ny; ++j)
      out.at(0, j + 1) = march(jet, lambda, kase, false, g.node(0, j), g.dy,
                               kSubsteps, out.at(0, j));
    parallel_for(0, g.ny, [&](int j) {
      for (int i = 0; i + 1 < g.nx; ++i)
        out.at(i + 1, j) = march(jet, lambda, kase, true, g.node(i, j), g.dx,
                                 kSubsteps, out.at(i, j));
    });
  }

  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const auto row = out.at(i, j).row(0);
      for (int k = 0; k < 3; ++k) out.position.at(i, j)[k] = row[k] / lambda;
    }

  // compatibility measure on the computed frame
  std::vector<Mat3> gx(g.size()), gy(g.size());
  parallel_for(0, g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const LaxPair L = lax_matrices(jet(g.node(i, j)), kase);
      gx[g.idx(i, j)] = L.Ax * out.at(i, j);
      gy[g.idx(i, j)] = L.Ay * out.at(i, j);
    }
  });
  double defect = 0.0;
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      const Mat3 dyGx = (gx[g.idx(i, j + 1)] - gx[g.idx(i, j - 1)]) * (1.0 / (2 * g.dy));
      const Mat3 dxGy = (gy[g.idx(i + 1, j)] - gy[g.idx(i - 1, j)]) * (1.0 / (2 * g.dx));
      defect = std::max(defect, (dyGx - dxGy).norm_fro());
    }
  out.cross_defect = defect;
  return out;
}

FrameField integrate_frame(const ClosedFormSolution& sol, double lambda,
                           const Grid2D& g, const Mat3& psi0, MetricCase kase,
                           bool transpose_order) {
  return integrate_frame([&sol](Point2 pt) { return sol.eval(pt); }, lambda, g,
                         psi0, kase, transpose_order);
}

double holonomy_defect(const JetFunc& jet, double lambda, const RectLoop& loop,
                       int steps_per_edge, MetricCase kase, const Mat3& psi0) {
  if (steps_per_edge < 1)
    throw std::invalid_argument("holonomy_defect: need at least one step");
  const double w = loop.x1 - loop.x0, h = loop.y1 - loop.y0;
  Mat3 psi = psi0;
  psi = march(jet, lambda, kase, true, {loop.x0, loop.y0}, w, steps_per_edge, psi);
  psi = march(jet, lambda, kase, false, {loop.x1, loop.y0}, h, steps_per_edge, psi);
  psi = march(jet, lambda, kase, true, {loop.x1, loop.y1}, -w, steps_per_edge, psi);
  psi = march(jet, lambda, kase, false, {loop.x0, loop.y1}, -h, steps_per_edge, psi);
  return (psi - psi0).norm_fro() / psi0.norm_fro();
}

double holonomy_defect(const ClosedFormSolution& sol, double lambda,
                       const RectLoop& loop, int steps_per_edge, MetricCase kase) {
  return holonomy_defect([&sol](Point2 pt) { return sol.eval(pt); }, lambda,
                         loop, steps_per_edge, kase);
}

FrameField traceless_gauge(const FrameField& f, const JetFunc& jet) {
  FrameField out = f;
  const Grid2D& g = f.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double s = std::exp(-2.0 / 3.0 * f.lambda * jet(g.node(i, j)).fxy);
      out.at(i, j) = f.at(i, j) * s;
      for (int k = 0; k < 3; ++k)
        out.position.at(i, j)[k] = f.position.at(i, j)[k] * s;
    }
  return out;
}

Mat3 traceless_ax(const Jet3& j) {
  return Mat3::from_rows({-2.0 / 3.0 * j.a, 1, 0}, {0, j.a / 3.0, j.p},
                         {1, j.b, j.a / 3.0});
}

Mat3 traceless_ay(const Jet3& j) {
  return Mat3::from_rows({-2.0 / 3.0 * j.b, 0, 1}, {1, j.b / 3.0, j.a},
                         {0, j.q, j.b / 3.0});
}

double loop_algebra_check_matrices(const Mat3& ax_hat, const Mat3& ay_hat,
                                   double lambda) {
  const Mat3 T = Mat3::from_rows({1, 0, 0}, {0, 0, 1}, {0, 1, 0});
  double worst = 0.0;
  for (const Mat3& Ahat : {ax_hat, ay_hat}) {
    const Mat3 A = Ahat * lambda;            // A(lambda)
    const Mat3 Aneg = Ahat * (-lambda);      // A(-lambda)
    const Mat3 lhs = (T * Aneg.transpose() * T) * (-1.0);
    worst = std::max(worst, (lhs - A).norm_max());
    worst = std::max(worst, std::abs(A.trace()));
  }
  return worst;
}

double loop_algebra_check(const Jet3& j, double lambda) {
  return loop_algebra_check_matrices(traceless_ax(j), traceless_ay(j), lambda);
}

ProjectiveData projective_data(const Jet3& j) {
  return {j.p, j.q, 0.5 * j.a * j.a + j.p * j.b, 0.5 * j.b * j.b + j.q * j.a};
}

ProjectiveResidual projective_residual(const ScalarField2D& beta,
                                       const ScalarField2D& gamma,
                                       const ScalarField2D& V,
                                       const ScalarField2D& W) {
  const Grid2D& g = beta.grid;
  if (!g.same_as(gamma.grid) || !g.same_as(V.grid) || !g.same_as(W.grid))
    throw std::invalid_argument("projective_residual: fields on different grids");

  ProjectiveResidual r{ScalarField2D(g, kNaV), ScalarField2D(g, kNaV),
                       ScalarField2D(g, kNaV), ScalarField2D(g, kNaV)};
  parallel_for(2, g.ny - 2, [&](int j) {
    for (int i = 2; i < g.nx - 2; ++i) {
      auto dX = [&](const ScalarField2D& f) {
        return (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * g.dx);
      };
      auto dY = [&](const ScalarField2D& f) {
        return (f.at(i, j + 1) - f.at(i, j - 1)) / (2 * g.dy);
      };
      const double byyy = (-beta.at(i, j - 2) + 2 * beta.at(i, j - 1) -
                           2 * beta.at(i, j + 1) + beta.at(i, j + 2)) /
                          (2 * g.dy * g.dy * g.dy);
      const double gxxx = (-gamma.at(i - 2, j) + 2 * gamma.at(i - 1, j) -
                           2 * gamma.at(i + 1, j) + gamma.at(i + 2, j)) /
                          (2 * g.dx * g.dx * g.dx);
      const double be = beta.at(i, j), ga = gamma.at(i, j);
      r.balance.at(i, j) = byyy - 2 * dY(beta) * W.at(i, j) - be * dY(W) -
                           (gxxx - 2 * dX(gamma) * V.at(i, j) - ga * dX(V));
      r.wx.at(i, j) = dX(W) - 2 * ga * dY(beta) - be * dY(gamma);
      r.vy.at(i, j) = dY(V) - 2 * be * dX(gamma) - ga * dX(beta);
      r.extra.at(i, j) = byyy - gxxx;
    }
  });
  return r;
}

}  // namespace centroflat
