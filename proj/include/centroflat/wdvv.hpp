#pragma once

#include "centroflat/core.hpp"

namespace centroflat {

enum class MetricCase { Hyperbolic, Convex };

/// Constant flat metric on the surface coordinates: 2 dx dy (hyperbolic) or
/// dx^2 + dy^2 (convex). Components are (g11, g12, g22).
struct Eta2 {
  MetricCase kase = MetricCase::Hyperbolic;
  std::array<double, 3> comp{0.0, 1.0, 0.0};

  static Eta2 hyperbolic() { return {MetricCase::Hyperbolic, {0.0, 1.0, 0.0}}; }
  static Eta2 convex() { return {MetricCase::Convex, {1.0, 0.0, 1.0}}; }

  double det() const { return comp[0] * comp[2] - comp[1] * comp[1]; }
  /// Inverse components (g^11, g^12, g^22); throws when singular.
  std::array<double, 3> inverse() const;
};

/// Structure constants c^a_{bc} of a commutative algebra on indices
/// 0..n (the unit direction plus the n reduced directions), symmetric in
/// the lower pair.
struct StructureConstants {
  int n = 2;
  std::vector<double> c;  // (n+1)^3 entries

  explicit StructureConstants(int n_ = 2)
      : n(n_), c(static_cast<std::size_t>((n_ + 1) * (n_ + 1) * (n_ + 1)), 0.0) {}
  double& at(int al, int be, int ga) {
    return c[(static_cast<std::size_t>(al) * (n + 1) + be) * (n + 1) + ga];
  }
  double at(int al, int be, int ga) const {
    return c[(static_cast<std::size_t>(al) * (n + 1) + be) * (n + 1) + ga];
  }
};

// Signed residuals; callers take norms.
double residual_ass1(const Jet3& j);  // p q - a b - 1
double residual_ass2(const Jet3& j);  // a^2 + b^2 - p b - q a - 1
double residual_ass3(const Jet3& j);  // F_ttt - F_tyy^2 + F_tty F_yyy

struct Hydro0Residual {
  ScalarField2D py_ax;      // p_y - a_x
  ScalarField2D ay_bx;      // a_y - b_x
  ScalarField2D by_qx;      // b_y - q_x
  ScalarField2D algebraic;  // p q - a b - 1 (every node, no sentinel)
};

Hydro0Residual residual_hydro0(const ScalarField2D& p, const ScalarField2D& a,
                               const ScalarField2D& b, const ScalarField2D& q);

/// The difference tensor h^s_{ij} = eta^{sk} f_{ijk} of a flat-coordinate
/// potential, index order (s, i, j) with i <= j symmetry.
std::array<std::array<double, 3>, 2> difference_tensor(const Eta2& eta,
                                                       const Jet3& j);

/// c^0_00 = 1, c^0_ij = eta_ij, c^i_0j = delta^i_j, c^i_jk = h^i_jk. The
/// construction is unconditional; associativity holds iff the curvature
/// identity does.
StructureConstants build_structure_constants(const Eta2& eta, const Jet3& j);

/// max over index tuples of |sum_e c^e_{ab} c^d_{ec} - c^e_{ac} c^d_{eb}|.
double associativity_residual(const StructureConstants& sc);

/// Max-norm defect of h^p_{ij} h^s_{pk} - h^p_{ik} h^s_{pj}
/// = eta_{ik} delta^s_j - eta_{ij} delta^s_k.
double comp3_curvature_residual(const Eta2& eta, const Jet3& j);

}  // namespace centroflat
