#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "centroflat/core.hpp"

namespace centroflat {

enum class EquationForm { Ass1, Ass2, Ass3 };

std::string to_string(EquationForm f);

/// A catalogued exact solution with analytic jet evaluation. For Ass3
/// entries the potential is F(t, y) and t occupies the x slot of Point2 and
/// of the returned Jet3. jet() throws std::domain_error outside the domain.
struct ClosedFormSolution {
  std::string id;
  EquationForm form = EquationForm::Ass1;
  std::map<std::string, double> params;
  std::function<bool(Point2)> domain;
  std::function<Jet3(Point2)> jet;

  Jet3 eval(Point2 pt) const { return jet(pt); }
  bool in_domain(Point2 pt) const { return domain(pt); }
};

namespace catalog {

struct SolutionInfo {
  std::string id;
  EquationForm form;
  std::vector<std::string> param_names;
};

/// Stable, documented ordering: the two trivial solutions, the six table
/// rows in f-form, the six table rows in F-form, then the parametric
/// families.
std::vector<SolutionInfo> list_solutions();

/// Builds a catalogue solution; omitted parameters take their defaults.
/// Throws std::invalid_argument for unknown ids or invalid parameters.
/// ODE-backed families integrate their trajectory here, eagerly; evaluation
/// afterwards is read-only and thread-safe.
ClosedFormSolution make(const std::string& id,
                        const std::map<std::string, double>& params = {});

Jet3 eval_jet(const std::string& id, const std::map<std::string, double>& params,
              Point2 pt);

/// The implicit table row 6: solves y t^4/2 + y^2 t = x for t inside
/// [bracket_lo, bracket_hi] (safeguarded Newton, |residual| <=
/// 1e-12 max(|x|,1)), then assembles the jet by implicit differentiation.
/// Errors: no real root in the bracket; more than one root (ambiguity).
struct Row6Point {
  double t;
  Jet3 jet;
};
Row6Point eval_implicit_row6(Point2 pt, double bracket_lo = 0.0,
                             double bracket_hi = 4.0);

/// (F_id, f_id) pairs related by the t-reparametrization, one per table row.
std::vector<std::pair<std::string, std::string>> solution_pairs();

/// Samples the potential values onto a grid (finite-difference oracles).
ScalarField2D sample_field(const ClosedFormSolution& s, const Grid2D& g);

/// Shapes for the free function of the rarefaction family.
struct PhiSpec {
  enum class Kind { Affine, Exponential, Tabulated };
  Kind kind = Kind::Affine;
  double k0 = 2.0, k1 = 0.25;
  std::vector<double> s_samples, phi_samples;

  static PhiSpec affine(double k0, double k1) {
    PhiSpec p;
    p.kind = Kind::Affine;
    p.k0 = k0;
    p.k1 = k1;
    return p;
  }
  static PhiSpec exponential(double k0, double k1) {
    PhiSpec p;
    p.kind = Kind::Exponential;
    p.k0 = k0;
    p.k1 = k1;
    return p;
  }
  /// Natural cubic spline through (s, phi) samples; the potential's lower
  /// jet comes from exact segmentwise antiderivatives of the spline.
  static PhiSpec tabulated(std::vector<double> s, std::vector<double> phi);
};

ClosedFormSolution make_rarefaction(double c, double mu, const PhiSpec& phi = PhiSpec{});

}  // namespace catalog
}  // namespace centroflat
