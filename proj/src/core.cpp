#include "centroflat/core.hpp"

#include <cstdio>
#include <fstream>

namespace centroflat {

Mat3 Mat3::inverse() const {
  const double d = det();
  if (d == 0.0) throw std::domain_error("Mat3::inverse: singular matrix");
  const Mat3& A = *this;
  Mat3 r;
  r(0, 0) = (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) / d;
  r(0, 1) = (A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2)) / d;
  r(0, 2) = (A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1)) / d;
  r(1, 0) = (A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2)) / d;
  r(1, 1) = (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) / d;
  r(1, 2) = (A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2)) / d;
  r(2, 0) = (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0)) / d;
  r(2, 1) = (A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1)) / d;
  r(2, 2) = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) / d;
  return r;
}

double det3(const std::array<double, 3>& a, const std::array<double, 3>& b,
            const std::array<double, 3>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) -
         a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

ScalarField2D VectorField3::component(int k) const {
  ScalarField2D f(grid);
  for (std::size_t n = 0; n < v.size(); ++n) f.v[n] = v[n][k];
  return f;
}

double linf(const ScalarField2D& f) {
  double m = 0.0;
  for (double x : f.v)
    if (!is_nav(x)) m = std::max(m, std::abs(x));
  return m;
}

double l2(const ScalarField2D& f) {
  double s = 0.0;
  std::size_t n = 0;
  for (double x : f.v)
    if (!is_nav(x)) {
      s += x * x;
      ++n;
    }
  return n ? std::sqrt(s / static_cast<double>(n)) : 0.0;
}

std::size_t count_valid(const ScalarField2D& f) {
  std::size_t n = 0;
  for (double x : f.v)
    if (!is_nav(x)) ++n;
  return n;
}

std::string format_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

void write_csv(const ScalarField2D& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "x,y,value\n";
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i)
      out << format_g(f.grid.x(i), 17) << ',' << format_g(f.grid.y(j), 17)
          << ',' << format_g(f.at(i, j), 17) << '\n';
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace centroflat
