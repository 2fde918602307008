#pragma once

// Scalar backends: binary floating point (double) and exact rationals.
//
// Every geometric routine in the library is a template over one of the two
// backends. Rational arithmetic never silently falls back to doubles; the
// only conversions are explicit (to_double for reporting, from_double for
// importing binary values exactly).

#include <algorithm>
#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace monge {

/// Arbitrary-precision rational, always kept in lowest terms by GMP.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <class T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

/// Absolute/relative tolerance pair. Ignored by the rational backend, where
/// every zero test is exact.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  static Tolerance uniform(double t) { return {t, t}; }

  /// Threshold for a quantity whose natural magnitude is `scale`.
  double threshold(double scale) const { return abs + rel * scale; }

  /// Bound used for dimensionless residuals (ratio products, relative
  /// hyperplane residuals).
  double residual_bound() const { return std::max(abs, rel); }

  void validate() const {
    if (!(abs >= 0.0) || !(rel >= 0.0)) {
      throw std::invalid_argument("tolerance components must be non-negative");
    }
    if (abs == 0.0 && rel == 0.0) {
      throw std::invalid_argument("approximate mode needs a positive tolerance component");
    }
  }
};

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

template <Scalar T>
T from_double(double v) {
  if constexpr (is_exact_v<T>) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in exact mode");
    return Rational(v);  // exact binary value
  } else {
    return v;
  }
}

inline double abs_of(double v) { return std::fabs(v); }
inline Rational abs_of(const Rational& v) { return boost::multiprecision::abs(v); }

/// Zero test: exact for rationals, |v| <= tol.threshold(scale) for doubles.
template <Scalar T>
bool negligible(const T& v, double scale, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    return v == 0;
  } else {
    return std::fabs(v) <= tol.threshold(scale);
  }
}

/// Parses "p/q", an integer, or a plain decimal ("-1.25") into an exact
/// rational. Throws std::invalid_argument on malformed text or q == 0.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& v);

}  // namespace monge
