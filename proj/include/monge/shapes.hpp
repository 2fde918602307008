#pragma once

// The homothetic families fed to the Monge pipeline: balls, finite vertex
// sets, and intersections of closed halfspaces, together with detection of
// the unique homothety of ratio > 1 carrying one shape onto another.

#include <algorithm>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "monge/kernel.hpp"
#include "monge/menelaus.hpp"

namespace monge {

template <Scalar T>
struct Ball {
  Point<T> center;
  T radius;
};

template <Scalar T>
struct VertexSet {
  std::vector<Point<T>> vertices;  // de-duplicated, lexicographically sorted
};

/// {x : normal . x >= offset}, stored with the largest |normal entry| = 1.
template <Scalar T>
struct Halfspace {
  std::vector<T> normal;
  T offset;
};

template <Scalar T>
struct HalfspaceSet {
  std::vector<Halfspace<T>> constraints;
};

template <Scalar T>
using Shape = std::variant<Ball<T>, VertexSet<T>, HalfspaceSet<T>>;

template <Scalar T>
std::size_t shape_dimension(const Shape<T>& s) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Ball<T>>) {
          return v.center.dim();
        } else if constexpr (std::is_same_v<V, VertexSet<T>>) {
          return v.vertices.front().dim();
        } else {
          return v.constraints.front().normal.size();
        }
      },
      s);
}

template <Scalar T>
std::string shape_kind(const Shape<T>& s) {
  static constexpr const char* names[] = {"ball", "vertices", "halfspaces"};
  return names[s.index()];
}

namespace detail {

template <Scalar T>
bool lex_less(const Point<T>& a, const Point<T>& b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
}

template <Scalar T>
bool near_equal(const std::vector<T>& a, const std::vector<T>& b, double scale, const Tolerance& tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!negligible<T>(T(a[i] - b[i]), scale, tol)) return false;
  }
  return true;
}

template <Scalar T>
Halfspace<T> normalize_halfspace(std::vector<T> normal, T offset) {
  T lead(0);
  for (const auto& c : normal) {
    if (abs_of(c) > lead) lead = abs_of(c);
  }
  if (lead == 0) throw GeometryError(ErrorKind::InvalidInput, "halfspace normal is the zero vector");
  for (auto& c : normal) c /= lead;
  offset /= lead;
  return Halfspace<T>{std::move(normal), std::move(offset)};
}

/// All index subsets of size k of {0..m-1}, in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t m, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > m) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    out.push_back(idx);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
  return out;
}

template <Scalar T>
bool satisfies(const Halfspace<T>& h, const std::vector<T>& x, const Tolerance& tol) {
  const T slack = dot<T>(h.normal, x) - h.offset;
  if constexpr (is_exact_v<T>) {
    return slack >= 0;
  } else {
    return slack >= -tol.threshold(std::max({1.0, std::fabs(h.offset), norm<T>(std::span<const T>(x))}));
  }
}

/// Vertices of {A x >= d} for a constraint matrix of full column rank,
/// by solving every n-subset of constraints as equalities.
template <Scalar T>
std::vector<Point<T>> enumerate_vertices(const std::vector<Halfspace<T>>& cons, std::size_t n, const Tolerance& tol) {
  std::vector<Point<T>> out;
  for (const auto& subset : combinations(cons.size(), n)) {
    Rows<T> a;
    std::vector<T> b;
    for (auto s : subset) {
      a.push_back(cons[s].normal);
      b.push_back(cons[s].offset);
    }
    const Tolerance pivot_tol{0.0, 1e-12};
    const auto x = solve_square<T>(std::move(a), std::move(b), is_exact_v<T> ? tol : pivot_tol);
    if (!x) continue;
    bool inside = true;
    for (const auto& c : cons) inside = inside && satisfies(c, *x, tol);
    if (!inside) continue;
    Point<T> p(*x);
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Point<T>& q) {
      return near_equal(q.coords, p.coords, std::max(1.0, norm(p)), tol);
    });
    if (!dup) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), lex_less<T>);
  return out;
}

/// Indices of a maximal linearly independent subset of the constraint normals.
template <Scalar T>
std::vector<std::size_t> independent_normals(const std::vector<Halfspace<T>>& cons, const Tolerance& tol) {
  std::vector<std::size_t> chosen;
  Rows<T> rows;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    rows.push_back(cons[i].normal);
    if (rank(rows, tol) == static_cast<int>(rows.size())) {
      chosen.push_back(i);
    } else {
      rows.pop_back();
    }
  }
  return chosen;
}

}  // namespace detail

/// Non-emptiness of a halfspace intersection. The lineality space is
/// factored out by restricting to the span of an independent set of
/// normals; the restricted polyhedron is pointed, so it is non-empty iff it
/// has a vertex.
template <Scalar T>
bool halfspaces_feasible(const std::vector<Halfspace<T>>& cons, const Tolerance& tol) {
  const auto basis = detail::independent_normals(cons, tol);
  std::vector<Halfspace<T>> reduced;
  for (const auto& c : cons) {
    std::vector<T> coeffs;
    for (auto q : basis) coeffs.push_back(dot<T>(c.normal, cons[q].normal));
    reduced.push_back(Halfspace<T>{std::move(coeffs), c.offset});
  }
  return !detail::enumerate_vertices(reduced, basis.size(), tol).empty();
}

/// A non-empty polyhedron {A x >= d} is bounded iff A has full column rank
/// and its recession cone {A r >= 0} has no extreme ray. Each candidate ray
/// spans the nullspace of n-1 independent normals.
template <Scalar T>
bool halfspaces_bounded(const std::vector<Halfspace<T>>& cons, std::size_t n, const Tolerance& tol) {
  Rows<T> all;
  for (const auto& c : cons) all.push_back(c.normal);
  if (rank(all, tol) < static_cast<int>(n)) return false;
  for (const auto& subset : detail::combinations(cons.size(), n - 1)) {
    std::vector<T> ray;
    if (n == 1) {
      ray = {T(1)};
    } else {
      Rows<T> sub;
      for (auto s : subset) sub.push_back(cons[s].normal);
      if (rank(sub, tol) != static_cast<int>(n) - 1) continue;
      if constexpr (is_exact_v<T>) {
        ray = detail::nullspace(sub, n).front();
      } else {
        const Eigen::MatrixXd m = detail::to_eigen(sub, n);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
        const Eigen::VectorXd v = svd.matrixV().col(static_cast<Eigen::Index>(n) - 1);
        ray.assign(v.data(), v.data() + v.size());
      }
    }
    for (int sign : {1, -1}) {
      bool recession = true;
      for (const auto& c : cons) {
        const T s = T(sign) * dot<T>(c.normal, ray);
        if constexpr (is_exact_v<T>) {
          recession = recession && s >= 0;
        } else {
          recession = recession && s >= -tol.threshold(norm<T>(std::span<const T>(ray)));
        }
      }
      if (recession) return false;
    }
  }
  return true;
}

template <Scalar T>
Ball<T> make_ball(Point<T> center, T radius) {
  if (center.dim() == 0) throw GeometryError(ErrorKind::InvalidInput, "ball center has no coordinates");
  if (!(radius > 0)) throw GeometryError(ErrorKind::InvalidInput, "ball radius must be positive");
  return Ball<T>{std::move(center), std::move(radius)};
}

template <Scalar T>
VertexSet<T> make_vertex_set(std::vector<Point<T>> pts) {
  if (pts.empty()) throw GeometryError(ErrorKind::InvalidInput, "vertex set is empty");
  require_same_dimension<T>(pts);
  std::sort(pts.begin(), pts.end(), detail::lex_less<T>);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return VertexSet<T>{std::move(pts)};
}

/// Validates and normalizes constraints. Rejects duplicates and empty
/// intersections.
template <Scalar T>
HalfspaceSet<T> make_halfspace_set(const std::vector<Halfspace<T>>& raw, const Tolerance& tol) {
  if (raw.empty()) throw GeometryError(ErrorKind::InvalidInput, "halfspace set has no constraints");
  const std::size_t n = raw.front().normal.size();
  if (n == 0) throw GeometryError(ErrorKind::InvalidInput, "halfspace normal has no coordinates");
  HalfspaceSet<T> out;
  for (const auto& h : raw) {
    if (h.normal.size() != n) throw GeometryError(ErrorKind::DimensionMismatch, "halfspace normals differ in length");
    Halfspace<T> c = detail::normalize_halfspace(h.normal, h.offset);
    for (const auto& prev : out.constraints) {
      if (detail::near_equal(prev.normal, c.normal, 1.0, tol) &&
          negligible<T>(T(prev.offset - c.offset), std::max(1.0, std::fabs(to_double(c.offset))), tol)) {
        throw GeometryError(ErrorKind::InvalidInput, "duplicate halfspace constraint");
      }
    }
    out.constraints.push_back(std::move(c));
  }
  if (!halfspaces_feasible(out.constraints, tol))
    throw GeometryError(ErrorKind::InfeasibleShape, "halfspace intersection is empty");
  return out;
}

/// Largest squared pairwise distance, exact in rational mode.
template <Scalar T>
T squared_diameter(std::span<const Point<T>> pts) {
  T best(0);
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::max(best, squared_distance(pts[a], pts[b]));
  return best;
}

template <Scalar T>
Point<T> centroid(std::span<const Point<T>> pts) {
  Point<T> g = Point<T>::zero(pts.front().dim());
  for (const auto& p : pts) g = g + p;
  return g / T(static_cast<long>(pts.size()));
}

/// Vertices of a bounded halfspace set; throws UnboundedShape otherwise.
template <Scalar T>
std::vector<Point<T>> halfspace_vertices(const HalfspaceSet<T>& h, const Tolerance& tol) {
  const std::size_t n = h.constraints.front().normal.size();
  if (!halfspaces_bounded(h.constraints, n, tol))
    throw GeometryError(ErrorKind::UnboundedShape, "halfspace set is unbounded");
  return detail::enumerate_vertices(h.constraints, n, tol);
}

/// Squared size: r^2 for balls, squared diameter for vertex sets and
/// bounded halfspace sets.
template <Scalar T>
T size_squared(const Shape<T>& s, const Tolerance& tol) {
  if (const auto* b = std::get_if<Ball<T>>(&s)) return b->radius * b->radius;
  if (const auto* v = std::get_if<VertexSet<T>>(&s)) return squared_diameter<T>(v->vertices);
  const auto verts = halfspace_vertices(std::get<HalfspaceSet<T>>(s), tol);
  return squared_diameter<T>(verts);
}

/// Radius (ball) or diameter (vertex set, bounded halfspace set).
template <Scalar T>
double size_measure(const Shape<T>& s, const Tolerance& tol) {
  return std::sqrt(to_double(size_squared(s, tol)));
}

template <Scalar T>
Shape<T> apply_homothety(const Homothety<T>& h, const Shape<T>& s) {
  if (shape_dimension(s) != h.center.dim())
    throw GeometryError(ErrorKind::DimensionMismatch, "homothety and shape dimensions differ");
  if (const auto* b = std::get_if<Ball<T>>(&s)) {
    return Ball<T>{h.apply(b->center), T(abs_of(h.ratio) * b->radius)};
  }
  if (const auto* v = std::get_if<VertexSet<T>>(&s)) {
    std::vector<Point<T>> image;
    for (const auto& p : v->vertices) image.push_back(h.apply(p));
    return make_vertex_set(std::move(image));
  }
  if (!(h.ratio > 0))
    throw GeometryError(ErrorKind::InvalidInput, "negative homothety ratio on a halfspace set");
  HalfspaceSet<T> out;
  for (const auto& c : std::get<HalfspaceSet<T>>(s).constraints) {
    const T nb = dot<T>(c.normal, h.center.coords);
    out.constraints.push_back(Halfspace<T>{c.normal, T(h.ratio * c.offset + (T(1) - h.ratio) * nb)});
  }
  return out;
}

namespace detail {

template <Scalar T>
void require_ratio_above_one(const T& ratio, const Tolerance& tol) {
  if (negligible<T>(T(ratio - 1), 1.0, tol))
    throw GeometryError(ErrorKind::RatioNotGreaterThanOne, "shapes have equal size: translation has no center");
  if (ratio < 1)
    throw GeometryError(ErrorKind::RatioNotGreaterThanOne, "target shape is smaller than the source");
}

template <Scalar T>
std::optional<T> exact_sqrt(const T& v) {
  if constexpr (is_exact_v<T>) {
    const Integer num = boost::multiprecision::numerator(v);
    const Integer den = boost::multiprecision::denominator(v);
    if (num < 0) return std::nullopt;
    const Integer rn = boost::multiprecision::sqrt(num);
    const Integer rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
  } else {
    return std::sqrt(v);
  }
}

template <Scalar T>
Homothety<T> detect_balls(const Ball<T>& from, const Ball<T>& to, const Tolerance& tol) {
  const T ratio = to.radius / from.radius;
  require_ratio_above_one(ratio, tol);
  const Point<T> center = (ratio * from.center - to.center) / T(ratio - 1);
  return Homothety<T>(center, ratio);
}

/// Symmetric Hausdorff distance between finite point sets.
template <Scalar T>
double hausdorff(const std::vector<Point<T>>& a, const std::vector<Point<T>>& b) {
  auto one_sided = [](const auto& x, const auto& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

template <Scalar T>
Homothety<T> detect_vertex_sets(const VertexSet<T>& from, const VertexSet<T>& to, const Tolerance& tol) {
  const T d_from = squared_diameter<T>(from.vertices);
  const T d_to = squared_diameter<T>(to.vertices);
  if (negligible<T>(d_from, 1.0, Tolerance{tol.abs * tol.abs, 0.0}) ||
      negligible<T>(d_to, 1.0, Tolerance{tol.abs * tol.abs, 0.0}))
    throw GeometryError(ErrorKind::DegenerateShape, "vertex set has zero diameter; homothety is not unique");
  const auto ratio = exact_sqrt<T>(d_to / d_from);
  if (!ratio) throw GeometryError(ErrorKind::NotHomothetic, "diameter ratio is irrational");
  require_ratio_above_one(*ratio, tol);
  const Point<T> g_from = centroid<T>(from.vertices);
  const Point<T> g_to = centroid<T>(to.vertices);
  Homothety<T> h((*ratio * g_from - g_to) / T(*ratio - 1), *ratio);

  std::vector<Point<T>> image;
  for (const auto& p : from.vertices) image.push_back(h.apply(p));
  bool matches;
  if constexpr (is_exact_v<T>) {
    matches = make_vertex_set(std::move(image)).vertices == to.vertices;
  } else {
    matches = hausdorff(image, to.vertices) <= tol.threshold(std::sqrt(d_to));
  }
  if (!matches) throw GeometryError(ErrorKind::NotHomothetic, "vertex sets are not homothetic");
  return h;
}

template <Scalar T>
Homothety<T> detect_halfspace_sets(const HalfspaceSet<T>& from, const HalfspaceSet<T>& to, const Tolerance& tol) {
  const std::size_t n = from.constraints.front().normal.size();
  if (from.constraints.size() != to.constraints.size())
    throw GeometryError(ErrorKind::NotHomothetic, "halfspace sets have different constraint counts");
  // Match by normal; a positive homothety keeps every normal.
  std::vector<bool> used(to.constraints.size(), false);
  Rows<T> system;
  std::vector<T> rhs;
  double scale = 1.0;
  for (const auto& c : from.constraints) {
    std::size_t hit = to.constraints.size();
    for (std::size_t k = 0; k < to.constraints.size(); ++k) {
      if (!used[k] && near_equal(c.normal, to.constraints[k].normal, 1.0, tol)) {
        hit = k;
        break;
      }
    }
    if (hit == to.constraints.size())
      throw GeometryError(ErrorKind::NotHomothetic, "constraint normals do not correspond");
    used[hit] = true;
    // ratio * d_from + n . c = d_to with c = (1 - ratio) * center
    std::vector<T> row{c.offset};
    row.insert(row.end(), c.normal.begin(), c.normal.end());
    system.push_back(std::move(row));
    rhs.push_back(to.constraints[hit].offset);
    scale = std::max({scale, std::fabs(to_double(c.offset)), std::fabs(to_double(to.constraints[hit].offset))});
  }
  const auto ls = least_squares<T>(system, rhs, tol);
  if (ls.rank < static_cast<int>(n) + 1)
    throw GeometryError(ErrorKind::NonUniqueHomothety, "homothety between halfspace sets is not unique");
  for (std::size_t r = 0; r < system.size(); ++r) {
    const T res = dot<T>(system[r], ls.solution) - rhs[r];
    if (!negligible<T>(res, scale, tol))
      throw GeometryError(ErrorKind::NotHomothetic, "halfspace offsets are inconsistent with a homothety");
  }
  const T ratio = ls.solution[0];
  if (!(ratio > 0)) throw GeometryError(ErrorKind::NotHomothetic, "constraint offsets need a non-positive ratio");
  require_ratio_above_one(ratio, tol);
  Point<T> center(std::vector<T>(ls.solution.begin() + 1, ls.solution.end()));
  return Homothety<T>(center / T(T(1) - ratio), ratio);
}

}  // namespace detail

/// The homothety h with h(from) = to and ratio > 1.
template <Scalar T>
Homothety<T> detect_homothety(const Shape<T>& from, const Shape<T>& to, const Tolerance& tol) {
  if constexpr (!is_exact_v<T>) tol.validate();
  if (from.index() != to.index())
    throw GeometryError(ErrorKind::InvalidInput, "cannot match a " + shape_kind(from) + " with a " + shape_kind(to));
  if (shape_dimension(from) != shape_dimension(to))
    throw GeometryError(ErrorKind::DimensionMismatch, "shapes live in different dimensions");
  if (const auto* b = std::get_if<Ball<T>>(&from)) return detail::detect_balls(*b, std::get<Ball<T>>(to), tol);
  if (const auto* v = std::get_if<VertexSet<T>>(&from))
    return detail::detect_vertex_sets(*v, std::get<VertexSet<T>>(to), tol);
  return detail::detect_halfspace_sets(std::get<HalfspaceSet<T>>(from), std::get<HalfspaceSet<T>>(to), tol);
}

}  // namespace monge
