#pragma once

// Piecewise polynomials in the local power basis (s - knot[k]), used for the
// tabulated rarefaction shape: a natural cubic spline and its exact
// antiderivatives.

#include <stdexcept>
#include <vector>

namespace centroflat::detail {

struct PiecewisePoly {
  std::vector<double> knots;                // ascending, size m+1
  std::vector<std::vector<double>> coef;    // m segments, power-basis coeffs

  double lo() const { return knots.front(); }
  double hi() const { return knots.back(); }

  int segment(double s) const {
    if (s < knots.front() || s > knots.back())
      throw std::domain_error("PiecewisePoly: point outside table range");
    int k = 0, m = static_cast<int>(coef.size());
    while (k < m - 1 && s >= knots[k + 1]) ++k;
    return k;
  }

  double eval(double s) const {
    int k = segment(s);
    double u = s - knots[k], r = 0.0;
    for (auto it = coef[k].rbegin(); it != coef[k].rend(); ++it) r = r * u + *it;
    return r;
  }

  // Continuous antiderivative vanishing at the first knot.
  PiecewisePoly antiderivative() const {
    PiecewisePoly out;
    out.knots = knots;
    out.coef.resize(coef.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < coef.size(); ++k) {
      auto& c = out.coef[k];
      c.resize(coef[k].size() + 1);
      c[0] = acc;
      for (std::size_t d = 0; d < coef[k].size(); ++d)
        c[d + 1] = coef[k][d] / static_cast<double>(d + 1);
      double u = knots[k + 1] - knots[k], r = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * u + *it;
      acc = r;
    }
    return out;
  }
};

// Natural cubic spline through (s_k, v_k); s ascending, size >= 3.
inline PiecewisePoly natural_cubic_spline(const std::vector<double>& s,
                                          const std::vector<double>& v) {
  const int n = static_cast<int>(s.size());
  if (n < 3 || v.size() != s.size())
    throw std::invalid_argument("natural_cubic_spline: need >= 3 samples");
  for (int k = 0; k + 1 < n; ++k)
    if (!(s[k + 1] > s[k]))
      throw std::invalid_argument("natural_cubic_spline: knots must ascend");

  // second derivatives M_k, natural ends; Thomas algorithm
  std::vector<double> h(n - 1), rhs(n, 0.0), diag(n, 2.0), sub(n, 0.0), sup(n, 0.0), M(n, 0.0);
  for (int k = 0; k < n - 1; ++k) h[k] = s[k + 1] - s[k];
  for (int k = 1; k < n - 1; ++k) {
    sub[k] = h[k - 1] / (h[k - 1] + h[k]);
    sup[k] = h[k] / (h[k - 1] + h[k]);
    rhs[k] = 6.0 * ((v[k + 1] - v[k]) / h[k] - (v[k] - v[k - 1]) / h[k - 1]) /
             (h[k - 1] + h[k]);
  }
  for (int k = 2; k < n - 1; ++k) {
    double m = sub[k] / diag[k - 1];
    diag[k] -= m * sup[k - 1];
    rhs[k] -= m * rhs[k - 1];
  }
  for (int k = n - 2; k >= 1; --k)
    M[k] = (rhs[k] - sup[k] * M[k + 1]) / diag[k];

  PiecewisePoly out;
  out.knots = s;
  out.coef.resize(n - 1);
  for (int k = 0; k < n - 1; ++k) {
    double c0 = v[k];
    double c2 = M[k] / 2.0;
    double c3 = (M[k + 1] - M[k]) / (6.0 * h[k]);
    double c1 = (v[k + 1] - v[k]) / h[k] - h[k] * (2.0 * M[k] + M[k + 1]) / 6.0;
    out.coef[k] = {c0, c1, c2, c3};
  }
  return out;
}

}  // namespace centroflat::detail
