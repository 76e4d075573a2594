#pragma once

#include <string>
#include <vector>

#include "centroflat/catalog.hpp"
#include "centroflat/core.hpp"
#include "centroflat/numerics.hpp"

namespace centroflat {

/// State of the quasilinear evolution in the (p, a, b) variables on a
/// uniform 1D grid; q is always derived as (1 + ab)/p, which keeps the
/// algebraic constraint exact.
struct HydroState {
  double x0 = 0.0, dx = 1.0;
  std::vector<double> p, a, b;
  double y = 0.0;

  int n() const { return static_cast<int>(p.size()); }
  double x(int i) const { return x0 + i * dx; }
  double q(int i) const { return (1.0 + a[i] * b[i]) / p[i]; }
};

/// U with rows (0,1,0), (0,0,1), (-(1+ab)/p^2, b/p, a/p); p != 0.
Mat3 flux_matrix(double p, double a, double b);

/// Roots of p z^3 - a z^2 - b z + q (the characteristic polynomial of U).
CubicRoots char_speeds(double p, double a, double b, double q);

enum class HydroScheme { LW2, RK2C };
enum class HydroBC { Extrapolate, Periodic };

struct EvolveOptions {
  HydroScheme scheme = HydroScheme::LW2;
  double cfl = 0.5;
  HydroBC bc = HydroBC::Extrapolate;
  double p_floor = 1e-8;
  double dissipation = 0.0;  // fourth-order artificial dissipation coefficient
  int snapshot_stride = 0;   // 0: keep first and last only
  int max_steps = 2000000;
};

struct HydroTrajectory {
  std::vector<HydroState> snapshots;
  int steps = 0;
  /// max |a_y - b_x| estimated a posteriori across steps (the algebraic
  /// constraint p q - a b = 1 holds identically by construction).
  double max_ay_bx_defect = 0.0;
};

/// Advances (p, a, b) to y_end; step = cfl dx / max|Re speed| (denominator
/// floored at 1e-12). Complex speeds are permitted; growth is then
/// possible. Halts with an error when |p| crosses p_floor.
HydroTrajectory evolve(const HydroState& s0, double y_end,
                       const EvolveOptions& opt = {});

struct RarefactionParams {
  double c = 1.0;
  double mu = 1.0;
  catalog::PhiSpec phi{};
};

/// Exact degenerate-hodograph family: p = phi(x + c y), a = c phi + mu,
/// b = c^2 phi - 1/mu, q = c^3 phi + c^2 mu - c/mu. Returns (p, a, b, q).
std::array<double, 4> rarefaction_eval(const RarefactionParams& par, Point2 pt);

struct RevolutionParams {
  double epsilon = 0.0;
  double nu = 0.0;
  double mu = 1.0;
  int branch = 1;  // sign of the square root in the quadratic system
};

/// Exact revolution family: a = y alpha(xi), b = x beta(xi), p = y^3 rho(xi),
/// q = x^3 gamma(xi), xi = x y. Returns (p, a, b, q).
std::array<double, 4> revolution_eval(const RevolutionParams& par, Point2 pt);

/// Residual of the F'' quadratic along sampled xi, under the constants map
/// H = F'' + r1/xi - r2/xi^2, G = F'' + s1/xi - s2/xi^2 (so r1 - s1 =
/// epsilon and s2 - r2 = nu are required). s is the integration constant.
std::vector<double> revolution_potential_check(const RevolutionParams& par,
                                               double s1, double s2, double r1,
                                               double r2, double s,
                                               const std::vector<double>& xi);

/// Samples the rarefaction family on a uniform grid at level y0.
HydroState hydro_state_from(const RarefactionParams& par, double x0, double x1,
                            int n, double y0);

/// CSV snapshot dump with columns y,x,p,a,b,q (17 significant digits).
void write_trajectory_csv(const HydroTrajectory& t, const std::string& path);

}  // namespace centroflat
