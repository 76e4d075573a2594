#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace centroflat {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Not-a-value marker for nodes excluded from norms (finite-difference
/// boundary rings, masked chamber violations). Stored as quiet NaN.
inline constexpr double kNaV = std::numeric_limits<double>::quiet_NaN();

inline bool is_nav(double v) { return std::isnan(v); }

/// Uniform rectangular grid. Node (i, j) sits at (x0 + i dx, y0 + j dy),
/// 0 <= i < nx, 0 <= j < ny. Fields are stored row-major: index = j*nx + i.
struct Grid2D {
  double x0 = 0.0, y0 = 0.0;
  double dx = 1.0, dy = 1.0;
  int nx = 0, ny = 0;

  Grid2D() = default;
  Grid2D(double x0_, double y0_, double dx_, double dy_, int nx_, int ny_)
      : x0(x0_), y0(y0_), dx(dx_), dy(dy_), nx(nx_), ny(ny_) {
    if (!(dx > 0.0) || !(dy > 0.0))
      throw std::invalid_argument("Grid2D: spacings must be positive");
    if (nx < 5 || ny < 5)
      throw std::invalid_argument("Grid2D: need at least 5 nodes per axis");
  }

  static Grid2D from_box(double xmin, double xmax, double ymin, double ymax,
                         int nx, int ny) {
    if (!(xmax > xmin) || !(ymax > ymin))
      throw std::invalid_argument("Grid2D: degenerate box");
    return Grid2D(xmin, ymin, (xmax - xmin) / (nx - 1), (ymax - ymin) / (ny - 1),
                  nx, ny);
  }

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  Point2 node(int i, int j) const { return {x(i), y(j)}; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  bool same_as(const Grid2D& o) const {
    return x0 == o.x0 && y0 == o.y0 && dx == o.dx && dy == o.dy &&
           nx == o.nx && ny == o.ny;
  }
};

struct ScalarField2D {
  Grid2D grid;
  std::vector<double> v;

  ScalarField2D() = default;
  explicit ScalarField2D(const Grid2D& g, double fill = 0.0)
      : grid(g), v(g.size(), fill) {}

  double& at(int i, int j) { return v[grid.idx(i, j)]; }
  double at(int i, int j) const { return v[grid.idx(i, j)]; }

  template <class Fn>
  static ScalarField2D sample(const Grid2D& g, Fn&& fn) {
    ScalarField2D f(g);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) f.at(i, j) = fn(g.node(i, j));
    return f;
  }
};

/// 1-form c_x dx + c_y dy sampled on a grid; both components share the grid.
struct OneFormField {
  ScalarField2D cx, cy;

  OneFormField() = default;
  explicit OneFormField(const Grid2D& g) : cx(g), cy(g) {}
  OneFormField(ScalarField2D cx_, ScalarField2D cy_)
      : cx(std::move(cx_)), cy(std::move(cy_)) {
    if (!cx.grid.same_as(cy.grid))
      throw std::invalid_argument("OneFormField: component grids differ");
  }
  const Grid2D& grid() const { return cx.grid; }
};

/// All partial derivatives of a scalar potential through order three at a
/// point. Third-order entries use the hydrodynamic naming p = f_xxx,
/// a = f_xxy, b = f_xyy, q = f_yyy. For potentials F(t, y) the t-derivatives
/// occupy the x slots (p = F_ttt, a = F_tty, b = F_tyy, q = F_yyy).
struct Jet3 {
  double f = 0.0, fx = 0.0, fy = 0.0;
  double fxx = 0.0, fxy = 0.0, fyy = 0.0;
  double p = 0.0, a = 0.0, b = 0.0, q = 0.0;
};

struct Mat3 {
  std::array<double, 9> m{};

  double& operator()(int r, int c) { return m[r * 3 + c]; }
  double operator()(int r, int c) const { return m[r * 3 + c]; }

  static Mat3 identity() {
    Mat3 I;
    I(0, 0) = I(1, 1) = I(2, 2) = 1.0;
    return I;
  }
  static Mat3 from_rows(const std::array<double, 3>& r0,
                        const std::array<double, 3>& r1,
                        const std::array<double, 3>& r2) {
    Mat3 A;
    for (int c = 0; c < 3; ++c) {
      A(0, c) = r0[c];
      A(1, c) = r1[c];
      A(2, c) = r2[c];
    }
    return A;
  }

  std::array<double, 3> row(int r) const { return {m[r * 3], m[r * 3 + 1], m[r * 3 + 2]}; }

  Mat3 operator+(const Mat3& o) const {
    Mat3 r;
    for (int k = 0; k < 9; ++k) r.m[k] = m[k] + o.m[k];
    return r;
  }
  Mat3 operator-(const Mat3& o) const {
    Mat3 r;
    for (int k = 0; k < 9; ++k) r.m[k] = m[k] - o.m[k];
    return r;
  }
  Mat3 operator*(double s) const {
    Mat3 r;
    for (int k = 0; k < 9; ++k) r.m[k] = m[k] * s;
    return r;
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }
  Mat3& operator+=(const Mat3& o) {
    for (int k = 0; k < 9; ++k) m[k] += o.m[k];
    return *this;
  }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  double trace() const { return m[0] + m[4] + m[8]; }
  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }
  Mat3 inverse() const;
  double norm_fro() const {
    double s = 0.0;
    for (double e : m) s += e * e;
    return std::sqrt(s);
  }
  double norm_max() const {
    double s = 0.0;
    for (double e : m) s = std::max(s, std::abs(e));
    return s;
  }
};

inline Mat3 operator*(double s, const Mat3& A) { return A * s; }

double det3(const std::array<double, 3>& a, const std::array<double, 3>& b,
            const std::array<double, 3>& c);

/// Three-component vector field on a grid (position fields, frame rows).
struct VectorField3 {
  Grid2D grid;
  std::vector<std::array<double, 3>> v;

  VectorField3() = default;
  explicit VectorField3(const Grid2D& g) : grid(g), v(g.size(), {0.0, 0.0, 0.0}) {}
  std::array<double, 3>& at(int i, int j) { return v[grid.idx(i, j)]; }
  const std::array<double, 3>& at(int i, int j) const { return v[grid.idx(i, j)]; }
  ScalarField2D component(int k) const;
};

// Norms skip NaV nodes. l2 is the root-mean-square over valid nodes.
double linf(const ScalarField2D& f);
double l2(const ScalarField2D& f);
std::size_t count_valid(const ScalarField2D& f);

/// CSV export: header `x,y,value`, nodes in row-major order, 17 significant
/// digits. Deterministic byte output.
void write_csv(const ScalarField2D& f, const std::string& path);

std::string format_g(double v, int digits);

}  // namespace centroflat
