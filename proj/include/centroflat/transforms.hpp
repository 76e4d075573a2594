#pragma once

#include <complex>
#include <vector>

#include "centroflat/catalog.hpp"
#include "centroflat/core.hpp"

namespace centroflat {

struct Ass1Image {
  double x;  // = F_ty
  Jet3 jet;
};

/// The t-reparametrization sending a potential F(t, y) to a potential
/// f(x, y): x = F_ty, f_xx = t, f_xy = -F_yy, f_yy = F_tt,
/// p = 1/F_tty, a = -F_tyy/F_tty, b = F_tyy^2/F_tty - F_yyy, q = (1+ab)/p.
/// f and f_y are not determined pointwise (quadratic gauge freedom of the
/// integration) and are returned as 0; f_x = t x - F_y is the image
/// potential's value. Throws when F_tty = 0.
Ass1Image ass3_to_ass1(const Jet3& F_jet, Point2 ty);
Ass1Image ass3_to_ass1(const ClosedFormSolution& F_sol, Point2 ty);

struct CharTriple {
  std::complex<double> w1, w2, w3;
  bool real_flag = false;
};

/// Roots of w^3 - 2a w^2 + (a^2 - p b) w - p. Real triples are sorted
/// descending (w1 >= w2 >= w3). Throws when p = 0.
CharTriple char_variables(double p, double a, double b);
CharTriple char_variables(const Jet3& j);

/// Relabels a real triple into the chamber used by the SO(2,1) forms:
/// u = 1/w with u1 < u3 < u2 (u3 strictly between the extremes).
CharTriple chamber_sort(const CharTriple& t);

struct CharForms {
  std::array<double, 2> dxi;     // (coefficient of dx, coefficient of dy)
  std::array<double, 2> deta;
  std::array<double, 2> dthird;  // = dxi - deta identically
};

/// Characteristic conservation-law forms
///   dxi    = (w2 - w3)(dx + (w2 + w3 - w1)/(2 w1 w2 w3) dy),
///   deta   = (w1 - w3)(dx + (w1 + w3 - w2)/(2 w1 w2 w3) dy),
///   dthird = (w2 - w1)(dx + (w2 + w1 - w3)/(2 w1 w2 w3) dy).
/// Each prefactor (wi - wj) pairs with the slope numerator (wi + wj - wk);
/// this is the pairing closed on solutions and the one satisfying
/// dthird = dxi - deta. Requires real, distinct, nonzero roots.
CharForms char_coordinate_forms(const CharTriple& t);

struct CharMetric {
  double E_c, F_c, G_c;
};
CharMetric char_metric(const CharTriple& t);

struct CharH {
  double h111, h222, h112, h212;  // h211 = h122 = 0
};
CharH char_h_components(const CharTriple& t);

struct So21Result {
  OneFormField w1, w2, w3;
  ScalarField2D res1, res2, res3;  // d w^k minus the displayed wedge
  std::vector<std::pair<int, int>> masked;  // chamber violations
};

/// SO(2,1) forms from u^i = 1/w^i fields. Nodes where the square-root
/// arguments are not positive (u3 not strictly between u1 and u2) or roots
/// coincide are masked with NaV and reported.
So21Result so21_forms(const ScalarField2D& u1, const ScalarField2D& u2,
                      const ScalarField2D& u3);

struct PotentialResult {
  ScalarField2D potential;
  double closedness_linf;
};

/// Path-integrates an (approximately) closed form: trapezoid along the
/// first row, then down each column; potential(origin) = 0. Throws when
/// the exterior derivative exceeds tol on the interior.
PotentialResult integrate_closed_form(const OneFormField& w, double tol);

struct WavePointField {
  ScalarField2D p1, p2, p3;  // on the source (x, y) grid
};

/// Pointwise extraction per w^1 = p^1 dxi, w^2 = p^2 deta,
/// w^3 = p^3 (dxi - deta) (least-squares ratio of aligned forms).
WavePointField threewave_extract(const So21Result& forms,
                                 const OneFormField& dxi,
                                 const OneFormField& deta);

/// Inverse-maps a rectangular characteristic grid through (xi, eta) by
/// warm-started Newton on the bilinear interpolant (Jacobian from the form
/// coefficients), then evaluates source fields by bilinear interpolation.
/// Targets whose preimage cannot be located give NaV.
class CharResampler {
 public:
  CharResampler(const ScalarField2D& xi, const ScalarField2D& eta,
                const OneFormField& dxi, const OneFormField& deta, int nt,
                double inset);
  const Grid2D& target() const { return target_; }
  ScalarField2D resample(const ScalarField2D& src) const;
  std::size_t failures() const { return failures_; }

 private:
  Grid2D target_;
  std::vector<Point2> preimage_;
  std::vector<char> ok_;
  Grid2D source_;
  std::size_t failures_ = 0;
};

struct WaveField {
  ScalarField2D p1, p2, p3;  // on a rectangular (xi, eta) grid
};

struct ThreeWaveResidual {
  ScalarField2D r1;  // p1_eta - p2 p3
  ScalarField2D r2;  // p2_xi - p1 p3
  ScalarField2D r3;  // p3_xi + p3_eta - p1 p2
};

ThreeWaveResidual threewave_residual(const WaveField& w);

struct ChainOptions {
  int target_n = 49;
  double inset = 0.2;
  double closedness_tol = 1e-6;
};

/// The full descent from (p, a, b) solution fields (q = (1 + ab)/p) to the
/// 3-wave system: characteristic roots, chamber labeling, conservation-law
/// forms, coordinates, SO(2,1) forms, extraction, resampling, residuals.
struct ChainResult {
  ScalarField2D u1, u2, u3;
  OneFormField dxi, deta;
  ScalarField2D xi, eta;
  So21Result so21;
  WavePointField wave_xy;
  Grid2D char_grid;
  WaveField wave;
  ThreeWaveResidual residual;
  std::array<double, 3> residual_linf{};
  std::array<double, 3> sys26_linf{};  // the three (26) combinations, resampled
  std::size_t masked_nodes = 0;
};

ChainResult run_threewave_chain(const ScalarField2D& p, const ScalarField2D& a,
                                const ScalarField2D& b,
                                const ChainOptions& opt = {});

}  // namespace centroflat
