#pragma once

#include <complex>

#include "centroflat/core.hpp"

namespace centroflat {

struct CubicRoots {
  std::array<std::complex<double>, 3> z;
  int n_real = 0;  // roots with exactly zero imaginary part, listed first
};

/// Roots of c3 z^3 + c2 z^2 + c1 z + c0. Closed-form solve, one Newton
/// polish per root, then roots with |Im| < 1e-9 are snapped to the real
/// axis. Real roots come first, sorted ascending; a complex pair is stored
/// as exact conjugates. Throws std::invalid_argument when c3 == 0.
CubicRoots cubic_roots(double c3, double c2, double c1, double c0);

/// Second-order central stencils for every derivative through order three.
/// Third derivatives use 5-point stencils in one direction and tensor
/// products for the mixed ones. The node must be at least 2 cells away from
/// every boundary; otherwise std::out_of_range.
Jet3 finite_diff_jet(const ScalarField2D& f, int i, int j);

/// d(cx dx + cy dy) = (d_x cy - d_y cx) dx^dy by central differences.
/// Boundary ring carries the NaV sentinel.
ScalarField2D exterior_derivative(const OneFormField& w);

}  // namespace centroflat
