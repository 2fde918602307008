#pragma once

// Dimension-generic linear algebra used by every verifier: ranks,
// nullspaces, hyperplane fitting and line/hyperplane intersection.
//
// Each routine is a template over the scalar backend. The double path leans
// on Eigen's SVD; the rational path uses exact Gaussian elimination.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "monge/errors.hpp"
#include "monge/scalar.hpp"

namespace monge {

/// A point (or free vector) of E^n.
template <Scalar T>
struct Point {
  std::vector<T> coords;

  Point() = default;
  explicit Point(std::vector<T> c) : coords(std::move(c)) {}
  Point(std::initializer_list<T> c) : coords(c) {}

  static Point zero(std::size_t n) { return Point(std::vector<T>(n, T(0))); }

  std::size_t dim() const noexcept { return coords.size(); }
  const T& operator[](std::size_t i) const { return coords[i]; }
  T& operator[](std::size_t i) { return coords[i]; }

  friend bool operator==(const Point&, const Point&) = default;

  friend Point operator+(Point a, const Point& b) {
    for (std::size_t i = 0; i < a.dim(); ++i) a.coords[i] += b.coords[i];
    return a;
  }
  friend Point operator-(Point a, const Point& b) {
    for (std::size_t i = 0; i < a.dim(); ++i) a.coords[i] -= b.coords[i];
    return a;
  }
  friend Point operator*(const T& s, Point a) {
    for (auto& c : a.coords) c *= s;
    return a;
  }
  friend Point operator/(Point a, const T& s) {
    for (auto& c : a.coords) c /= s;
    return a;
  }
};

template <Scalar T>
using Rows = std::vector<std::vector<T>>;

template <Scalar T>
T dot(std::span<const T> a, std::span<const T> b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <Scalar T>
T dot(const Point<T>& a, const Point<T>& b) {
  return dot<T>(std::span<const T>(a.coords), std::span<const T>(b.coords));
}

template <Scalar T>
double norm(std::span<const T> v) {
  double s = 0.0;
  for (const auto& x : v) {
    const double d = to_double(x);
    s += d * d;
  }
  return std::sqrt(s);
}

template <Scalar T>
double norm(const Point<T>& p) {
  return norm<T>(std::span<const T>(p.coords));
}

template <Scalar T>
double distance(const Point<T>& a, const Point<T>& b) {
  return norm(a - b);
}

template <Scalar T>
T squared_distance(const Point<T>& a, const Point<T>& b) {
  const Point<T> d = a - b;
  return dot(d, d);
}

/// Diagonal length of the axis-aligned bounding box.
template <Scalar T>
double bounding_box_diameter(std::span<const Point<T>> pts) {
  if (pts.empty()) return 0.0;
  const std::size_t n = pts.front().dim();
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double lo = to_double(pts.front()[k]);
    double hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, to_double(p[k]));
      hi = std::max(hi, to_double(p[k]));
    }
    s += (hi - lo) * (hi - lo);
  }
  return std::sqrt(s);
}

template <Scalar T>
Point<T> convert_point(const Point<double>& p) {
  Point<T> out;
  out.coords.reserve(p.dim());
  for (double c : p.coords) out.coords.push_back(from_double<T>(c));
  return out;
}

inline Point<double> to_double(const Point<Rational>& p) {
  Point<double> out;
  out.coords.reserve(p.dim());
  for (const auto& c : p.coords) out.coords.push_back(to_double(c));
  return out;
}
inline const Point<double>& to_double(const Point<double>& p) { return p; }

/// The set {x : normal . x = offset}, kept in a canonical representation:
/// doubles are scaled so the largest-magnitude normal entry is exactly 1,
/// rationals are reduced to primitive integers with that entry positive.
template <Scalar T>
struct Hyperplane {
  std::vector<T> normal;
  T offset{0};

  static Hyperplane normalized(std::vector<T> normal, T offset);

  std::size_t dim() const noexcept { return normal.size(); }

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;

  /// normal . x - offset
  T evaluate(const Point<T>& x) const {
    return dot<T>(std::span<const T>(normal), std::span<const T>(x.coords)) - offset;
  }

  double distance(const Point<T>& x) const {
    return std::fabs(to_double(evaluate(x))) / norm<T>(std::span<const T>(normal));
  }
};

template <Scalar T>
Hyperplane<T> Hyperplane<T>::normalized(std::vector<T> normal, T offset) {
  std::size_t lead = 0;
  bool nonzero = false;
  for (std::size_t i = 0; i < normal.size(); ++i) {
    if (normal[i] != 0 && (!nonzero || abs_of(normal[i]) > abs_of(normal[lead]))) {
      lead = i;
      nonzero = true;
    }
  }
  if (!nonzero) {
    throw GeometryError(ErrorKind::InvalidInput, "hyperplane normal is the zero vector");
  }
  if constexpr (is_exact_v<T>) {
    Integer den_lcm = 1;
    auto fold_den = [&](const Rational& v) {
      den_lcm = boost::multiprecision::lcm(den_lcm, Integer(boost::multiprecision::denominator(v)));
    };
    for (const auto& v : normal) fold_den(v);
    fold_den(offset);
    Integer num_gcd = 0;
    auto fold_num = [&](const Rational& v) {
      const Rational scaled = v * Rational(den_lcm);
      num_gcd = boost::multiprecision::gcd(num_gcd, Integer(boost::multiprecision::numerator(scaled)));
    };
    for (const auto& v : normal) fold_num(v);
    fold_num(offset);
    Rational factor = Rational(den_lcm) / Rational(num_gcd);
    if (normal[lead] < 0) factor = -factor;
    for (auto& v : normal) v *= factor;
    offset *= factor;
  } else {
    const double pivot = normal[lead];
    for (auto& v : normal) v /= pivot;
    offset /= pivot;
  }
  return Hyperplane{std::move(normal), std::move(offset)};
}

inline Hyperplane<double> to_double(const Hyperplane<Rational>& h) {
  std::vector<double> n;
  for (const auto& v : h.normal) n.push_back(to_double(v));
  return Hyperplane<double>::normalized(std::move(n), to_double(h.offset));
}
inline Hyperplane<double> to_double(const Hyperplane<double>& h) { return h; }

/// True when two hyperplanes describe the same set: their (normal, offset)
/// vectors are proportional within `tol` after canonical scaling.
template <Scalar A, Scalar B>
bool same_hyperplane(const Hyperplane<A>& a, const Hyperplane<B>& b, double tol) {
  const Hyperplane<double> x = to_double(a);
  const Hyperplane<double> y = to_double(b);
  if (x.dim() != y.dim()) return false;
  double scale = 1.0;
  for (std::size_t i = 0; i < x.dim(); ++i) scale = std::max({scale, std::fabs(x.normal[i])});
  scale = std::max({scale, std::fabs(x.offset), std::fabs(y.offset)});
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (std::fabs(x.normal[i] - y.normal[i]) > tol * scale) return false;
  }
  return std::fabs(x.offset - y.offset) <= tol * scale;
}

template <Scalar T>
struct HyperplaneFit {
  Hyperplane<T> plane;
  /// max orthogonal distance of the inputs to `plane`, divided by their
  /// bounding-box diameter. Exactly 0 in rational mode iff coplanar.
  double residual = 0.0;
  /// Dimension of the affine span of the inputs.
  int span_dimension = 0;
};

namespace detail {

inline Eigen::MatrixXd to_eigen(const Rows<double>& rows, std::size_t cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

template <Scalar T>
std::size_t column_count(const Rows<T>& rows) {
  if (rows.empty()) throw GeometryError(ErrorKind::InvalidInput, "matrix has no rows");
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw GeometryError(ErrorKind::NonRectangular, "matrix rows differ in length");
  }
  return cols;
}

/// In-place reduced row echelon form over the rationals. Returns the pivot
/// columns.
inline std::vector<std::size_t> rref(Rows<Rational>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of the right nullspace {x : M x = 0}, exact.
inline Rows<Rational> nullspace(Rows<Rational> m, std::size_t cols) {
  const auto pivots = rref(m);
  Rows<Rational> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Orthogonal (not normalized) basis of the row space by Gram-Schmidt.
template <Scalar T>
Rows<T> orthogonal_basis(const Rows<T>& rows, const Tolerance& tol) {
  Rows<T> basis;
  double scale = 0.0;
  for (const auto& r : rows) scale = std::max(scale, norm<T>(std::span<const T>(r)));
  for (const auto& r : rows) {
    std::vector<T> v = r;
    for (int pass = 0; pass < (is_exact_v<T> ? 1 : 2); ++pass) {
      for (const auto& u : basis) {
        const T f = dot<T>(v, u) / dot<T>(u, u);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= f * u[k];
      }
    }
    bool zero;
    if constexpr (is_exact_v<T>) {
      zero = dot<T>(v, v) == 0;
    } else {
      zero = norm<T>(std::span<const T>(v)) <= tol.threshold(scale);
    }
    if (!zero) basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves the square system A x = b by Gaussian elimination with partial
/// pivoting. Returns nullopt when a pivot is negligible.
template <Scalar T>
std::optional<std::vector<T>> solve_square(Rows<T> a, std::vector<T> b, const Tolerance& tol) {
  const std::size_t n = a.size();
  double scale = 0.0;
  for (const auto& r : a)
    for (const auto& v : r) scale = std::max(scale, std::fabs(to_double(v)));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs_of(a[r][col]) > abs_of(a[sel][col])) sel = r;
    }
    if (negligible<T>(a[sel][col], scale, tol)) return std::nullopt;
    std::swap(a[col], a[sel]);
    std::swap(b[col], b[sel]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const T f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<T> x(n, T(0));
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

template <Scalar T>
struct LeastSquares {
  std::vector<T> solution;
  int rank = 0;
};

/// min ||A x - b||. The rank is reported so callers can refuse
/// underdetermined systems; the solution is only meaningful at full column
/// rank. Exact mode solves the normal equations.
template <Scalar T>
LeastSquares<T> least_squares(const Rows<T>& a, const std::vector<T>& b, const Tolerance& tol);

}  // namespace detail

/// Numerical rank (doubles: singular values above max(abs, rel * sigma_1))
/// or exact rank (rationals).
template <Scalar T>
int rank(const Rows<T>& rows, const Tolerance& tol) {
  const std::size_t cols = detail::column_count(rows);
  if constexpr (is_exact_v<T>) {
    Rows<Rational> m = rows;
    return static_cast<int>(detail::rref(m).size());
  } else {
    tol.validate();
    if (cols == 0) return 0;
    const Eigen::MatrixXd m = detail::to_eigen(rows, cols);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double cut = std::max(tol.abs, tol.rel * sv(0));
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cut) ++r;
    }
    return r;
  }
}

template <Scalar T>
void require_same_dimension(std::span<const Point<T>> pts) {
  if (pts.empty()) throw GeometryError(ErrorKind::InvalidInput, "no points given");
  for (const auto& p : pts) {
    if (p.dim() != pts.front().dim())
      throw GeometryError(ErrorKind::DimensionMismatch, "points of mixed dimension");
    if (p.dim() == 0) throw GeometryError(ErrorKind::InvalidInput, "zero-dimensional point");
  }
}

/// Difference vectors p_k - p_0, k >= 1.
template <Scalar T>
Rows<T> difference_rows(std::span<const Point<T>> pts) {
  Rows<T> rows;
  for (std::size_t k = 1; k < pts.size(); ++k) rows.push_back((pts[k] - pts[0]).coords);
  return rows;
}

/// Dimension of the affine span of `pts`.
template <Scalar T>
int affine_span_dimension(std::span<const Point<T>> pts, const Tolerance& tol) {
  require_same_dimension(pts);
  if (pts.size() == 1) return 0;
  return rank(difference_rows(pts), tol);
}

/// n+1 points of E^n form a non-degenerate simplex.
template <Scalar T>
bool affinely_independent(std::span<const Point<T>> pts, const Tolerance& tol) {
  require_same_dimension(pts);
  const std::size_t n = pts.front().dim();
  if (pts.size() != n + 1) {
    throw GeometryError(ErrorKind::InvalidInput,
                        "expected " + std::to_string(n + 1) + " points in E^" + std::to_string(n));
  }
  return affine_span_dimension(pts, tol) == static_cast<int>(n);
}

template <Scalar T>
double relative_residual(const Hyperplane<T>& h, std::span<const Point<T>> pts) {
  const double diam = bounding_box_diameter(pts);
  if (diam == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, h.distance(p));
  return worst / diam;
}

/// Least-squares hyperplane through `pts` (smallest singular direction of
/// the centered points; exact nullspace for rationals). For exactly n
/// points the hyperplane interpolates them. Throws DegenerateConfiguration
/// (with span dimension) when the points span less than n - 1 dimensions.
template <Scalar T>
HyperplaneFit<T> fit_hyperplane(std::span<const Point<T>> pts, const Tolerance& tol) {
  require_same_dimension(pts);
  const std::size_t n = pts.front().dim();
  const int span = affine_span_dimension(pts, tol);
  if (span < static_cast<int>(n) - 1) {
    throw GeometryError(ErrorKind::DegenerateConfiguration,
                        "points span only " + std::to_string(span) + " dimensions in E^" + std::to_string(n))
        .with_span_dimension(span);
  }

  std::vector<T> normal;
  T offset(0);
  if constexpr (is_exact_v<T>) {
    // Interpolate through a maximal independent prefix of the differences;
    // when the points are coplanar this is the unique hyperplane.
    Rows<Rational> chosen;
    for (auto& row : difference_rows(pts)) {
      if (chosen.size() + 1 == n) break;
      chosen.push_back(row);
      Rows<Rational> probe = chosen;
      if (detail::rref(probe).size() < chosen.size()) chosen.pop_back();
    }
    if (chosen.empty()) {
      normal.assign(n, Rational(0));
      normal[0] = 1;
    } else {
      normal = detail::nullspace(chosen, n).front();
    }
    offset = dot<T>(std::span<const T>(normal), std::span<const T>(pts.front().coords));
  } else {
    Eigen::VectorXd dir;
    if (pts.size() == n && n >= 2) {
      const Eigen::MatrixXd m = detail::to_eigen(difference_rows(pts), n);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
      dir = svd.matrixV().col(static_cast<Eigen::Index>(n) - 1);
      normal.assign(dir.data(), dir.data() + dir.size());
      offset = dot<T>(std::span<const T>(normal), std::span<const T>(pts.front().coords));
    } else {
      Point<double> centroid = Point<double>::zero(n);
      for (const auto& p : pts) centroid = centroid + p;
      centroid = centroid / static_cast<double>(pts.size());
      Rows<double> centered;
      for (const auto& p : pts) centered.push_back((p - centroid).coords);
      const Eigen::MatrixXd m = detail::to_eigen(centered, n);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
      dir = svd.matrixV().col(static_cast<Eigen::Index>(n) - 1);
      normal.assign(dir.data(), dir.data() + dir.size());
      offset = dot<T>(std::span<const T>(normal), std::span<const T>(centroid.coords));
    }
  }
  HyperplaneFit<T> fit{Hyperplane<T>::normalized(std::move(normal), std::move(offset)), 0.0, span};
  fit.residual = relative_residual(fit.plane, pts);
  return fit;
}

/// A hyperplane containing every point of a possibly degenerate set: its
/// normal is the first standard basis vector with a non-negligible
/// component orthogonal to the points' affine span (projected onto that
/// complement). For coincident points this is e_1.
template <Scalar T>
Hyperplane<T> canonical_hyperplane_through(std::span<const Point<T>> pts, const Tolerance& tol) {
  require_same_dimension(pts);
  const std::size_t n = pts.front().dim();
  const Rows<T> basis = detail::orthogonal_basis(difference_rows(pts), tol);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<T> e(n, T(0));
    e[k] = T(1);
    for (const auto& u : basis) {
      const T f = dot<T>(e, u) / dot<T>(u, u);
      for (std::size_t c = 0; c < n; ++c) e[c] -= f * u[c];
    }
    if (!negligible<T>(dot<T>(e, e), 1.0, tol)) {
      const T offset = dot<T>(std::span<const T>(e), std::span<const T>(pts.front().coords));
      return Hyperplane<T>::normalized(std::move(e), offset);
    }
  }
  throw GeometryError(ErrorKind::DegenerateConfiguration, "points span the whole space");
}

/// The point p + t (q - p) lying on h. Throws NearParallel when the line is
/// parallel to (or contained in) h.
template <Scalar T>
Point<T> line_hyperplane_intersection(const Point<T>& p, const Point<T>& q, const Hyperplane<T>& h,
                                      const Tolerance& tol) {
  if (p.dim() != q.dim() || p.dim() != h.dim())
    throw GeometryError(ErrorKind::DimensionMismatch, "line and hyperplane dimensions differ");
  const Point<T> dir = q - p;
  const double len = norm(dir);
  if (negligible<T>(dot(dir, dir), std::max(1.0, norm(p)), tol) || len == 0.0)
    throw GeometryError(ErrorKind::InvalidInput, "line endpoints coincide");
  const T denom = dot<T>(std::span<const T>(h.normal), std::span<const T>(dir.coords));
  const double normal_len = norm<T>(std::span<const T>(h.normal));
  if (negligible<T>(denom, normal_len * len, tol))
    throw GeometryError(ErrorKind::NearParallel, "line is parallel to the hyperplane");
  const T t = (h.offset - dot<T>(std::span<const T>(h.normal), std::span<const T>(p.coords))) / denom;
  return p + t * dir;
}

namespace detail {

template <Scalar T>
LeastSquares<T> least_squares(const Rows<T>& a, const std::vector<T>& b, const Tolerance& tol) {
  const std::size_t cols = column_count(a);
  LeastSquares<T> out;
  out.rank = rank(a, tol);
  out.solution.assign(cols, T(0));
  if (out.rank < static_cast<int>(cols)) return out;
  if constexpr (is_exact_v<T>) {
    Rows<Rational> ata(cols, std::vector<Rational>(cols, Rational(0)));
    std::vector<Rational> atb(cols, Rational(0));
    for (std::size_t r = 0; r < a.size(); ++r) {
      for (std::size_t i = 0; i < cols; ++i) {
        atb[i] += a[r][i] * b[r];
        for (std::size_t j = 0; j < cols; ++j) ata[i][j] += a[r][i] * a[r][j];
      }
    }
    out.solution = *solve_square(std::move(ata), std::move(atb), tol);
  } else {
    const Eigen::MatrixXd m = to_eigen(a, cols);
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    const Eigen::VectorXd x = m.colPivHouseholderQr().solve(rhs);
    out.solution.assign(x.data(), x.data() + x.size());
  }
  return out;
}

}  // namespace detail

}  // namespace monge
