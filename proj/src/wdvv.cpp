#include "centroflat/wdvv.hpp"

#include "centroflat/parallel.hpp"

namespace centroflat {

std::array<double, 3> Eta2::inverse() const {
  const double d = det();
  if (d == 0.0) throw std::domain_error("Eta2: singular metric");
  return {comp[2] / d, -comp[1] / d, comp[0] / d};
}

double residual_ass1(const Jet3& j) { return j.p * j.q - j.a * j.b - 1.0; }

double residual_ass2(const Jet3& j) {
  return j.a * j.a + j.b * j.b - j.p * j.b - j.q * j.a - 1.0;
}

double residual_ass3(const Jet3& j) { return j.p - j.b * j.b + j.a * j.q; }

Hydro0Residual residual_hydro0(const ScalarField2D& p, const ScalarField2D& a,
                               const ScalarField2D& b, const ScalarField2D& q) {
  const Grid2D& g = p.grid;
  if (!g.same_as(a.grid) || !g.same_as(b.grid) || !g.same_as(q.grid))
    throw std::invalid_argument("residual_hydro0: fields on different grids");

  Hydro0Residual r{ScalarField2D(g, kNaV), ScalarField2D(g, kNaV),
                   ScalarField2D(g, kNaV), ScalarField2D(g)};
  parallel_for(0, g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      r.algebraic.at(i, j) = p.at(i, j) * q.at(i, j) - a.at(i, j) * b.at(i, j) - 1.0;
      if (i < 1 || j < 1 || i > g.nx - 2 || j > g.ny - 2) continue;
      auto dX = [&](const ScalarField2D& f) {
        return (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * g.dx);
      };
      auto dY = [&](const ScalarField2D& f) {
        return (f.at(i, j + 1) - f.at(i, j - 1)) / (2 * g.dy);
      };
      r.py_ax.at(i, j) = dY(p) - dX(a);
      r.ay_bx.at(i, j) = dY(a) - dX(b);
      r.by_qx.at(i, j) = dY(b) - dX(q);
    }
  });
  return r;
}

std::array<std::array<double, 3>, 2> difference_tensor(const Eta2& eta,
                                                       const Jet3& j) {
  const std::array<double, 3> inv = eta.inverse();
  // f_{ij1} and f_{ij2} packed over (ij) in {11, 12, 22}
  const std::array<double, 3> f1 = {j.p, j.a, j.b};
  const std::array<double, 3> f2 = {j.a, j.b, j.q};
  std::array<std::array<double, 3>, 2> h{};
  for (int ij = 0; ij < 3; ++ij) {
    h[0][ij] = inv[0] * f1[ij] + inv[1] * f2[ij];  // h^1_{ij}
    h[1][ij] = inv[1] * f1[ij] + inv[2] * f2[ij];  // h^2_{ij}
  }
  return h;
}

namespace {

inline int pack(int i, int j) { return i + j; }  // (1,1)->0? indices below are 0-based

}  // namespace

StructureConstants build_structure_constants(const Eta2& eta, const Jet3& j) {
  const auto h = difference_tensor(eta, j);
  StructureConstants sc(2);
  sc.at(0, 0, 0) = 1.0;
  // eta components by 0-based surface indices (i, j): 00->g11, 01->g12, 11->g22
  auto eta_ij = [&](int i, int k) { return eta.comp[i + k]; };
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      sc.at(0, i + 1, k + 1) = eta_ij(i, k);
      sc.at(i + 1, 0, k + 1) = (i == k) ? 1.0 : 0.0;
      sc.at(i + 1, k + 1, 0) = (i == k) ? 1.0 : 0.0;
      for (int s = 0; s < 2; ++s) sc.at(s + 1, i + 1, k + 1) = h[s][pack(i, k)];
    }
  return sc;
}

double associativity_residual(const StructureConstants& sc) {
  const int N = sc.n + 1;
  double worst = 0.0;
  for (int al = 0; al < N; ++al)
    for (int be = 0; be < N; ++be)
      for (int ga = 0; ga < N; ++ga)
        for (int de = 0; de < N; ++de) {
          double s = 0.0;
          for (int e = 0; e < N; ++e)
            s += sc.at(e, al, be) * sc.at(de, e, ga) -
                 sc.at(e, al, ga) * sc.at(de, e, be);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double comp3_curvature_residual(const Eta2& eta, const Jet3& j) {
  const auto h = difference_tensor(eta, j);
  auto H = [&](int s, int i, int k) { return h[s][pack(i, k)]; };
  auto eta_ij = [&](int i, int k) { return eta.comp[i + k]; };
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj)
      for (int k = 0; k < 2; ++k)
        for (int s = 0; s < 2; ++s) {
          double lhs = 0.0;
          for (int pp = 0; pp < 2; ++pp)
            lhs += H(pp, i, jj) * H(s, pp, k) - H(pp, i, k) * H(s, pp, jj);
          const double rhs = eta_ij(i, k) * (s == jj ? 1.0 : 0.0) -
                             eta_ij(i, jj) * (s == k ? 1.0 : 0.0);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

}  // namespace centroflat
