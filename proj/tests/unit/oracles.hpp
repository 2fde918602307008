#pragma once

// Independent reference computations used as test oracles. Nothing here
// calls into the library's numerics.

#include <array>
#include <cmath>
#include <vector>

#include "monge/scalar.hpp"

namespace oracle {

using monge::Rational;

inline Rational q(long long p, long long d = 1) { return Rational(p, d); }

/// 3x3 determinant by cofactor expansion along the first row.
template <class T>
T det3(const std::array<std::array<T, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// External similitude center of two balls: the point dividing the centers
/// externally in the ratio of the radii.
template <class T>
std::vector<T> external_center(const std::vector<T>& c_big, const T& r_big, const std::vector<T>& c_small,
                               const T& r_small) {
  std::vector<T> out(c_big.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = (r_big * c_small[k] - r_small * c_big[k]) / (r_big - r_small);
  return out;
}

/// Angle between unit vectors by arccos of the dot product.
inline double sphere_angle(const std::vector<double>& x, const std::vector<double>& y) {
  double dot = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) dot += x[k] * y[k];
  return std::acos(std::max(-1.0, std::min(1.0, dot)));
}

inline double lorentz(const std::vector<double>& x, const std::vector<double>& y) {
  double s = -x[0] * y[0];
  for (std::size_t k = 1; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

inline double hyperbolic_distance(const std::vector<double>& x, const std::vector<double>& y) {
  return std::acosh(std::max(1.0, -lorentz(x, y)));
}

}  // namespace oracle
