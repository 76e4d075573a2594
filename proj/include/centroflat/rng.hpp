#pragma once

#include <cstdint>

#include "centroflat/core.hpp"

namespace centroflat {

/// splitmix64; deterministic across platforms (unlike <random> distributions).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

/// R2 low-discrepancy sequence in [0,1)^2 with a seeded offset. Used for the
/// quasi-random sample points of the verification suites.
class QuasiRandom2D {
 public:
  explicit QuasiRandom2D(std::uint64_t seed) {
    std::uint64_t s = seed + 0x632be59bd9b4e019ULL;
    u_ = uniform01(s);
    v_ = uniform01(s);
  }

  Point2 next() {
    // plastic-number additive recurrence
    constexpr double a1 = 0.7548776662466927;   // 1/g
    constexpr double a2 = 0.5698402909980532;   // 1/g^2
    u_ += a1;
    if (u_ >= 1.0) u_ -= 1.0;
    v_ += a2;
    if (v_ >= 1.0) v_ -= 1.0;
    return {u_, v_};
  }

  /// Next point mapped into [xmin,xmax]x[ymin,ymax].
  Point2 next_in(double xmin, double xmax, double ymin, double ymax) {
    Point2 t = next();
    return {xmin + t.x * (xmax - xmin), ymin + t.y * (ymax - ymin)};
  }

 private:
  double u_ = 0.0, v_ = 0.0;
};

}  // namespace centroflat
