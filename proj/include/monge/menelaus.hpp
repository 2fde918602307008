#pragma once

// Signed homothety ratios of points placed on the edge lines of a simplex,
// the ratio-product (Menelaus) criterion for those points to be coplanar,
// and the weight construction that produces coplanar configurations with
// known ratios.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monge/kernel.hpp"

namespace monge {

using PairIndex = std::pair<int, int>;      // 0-based, first < second
using TripleIndex = std::array<int, 3>;     // 0-based, increasing

/// x -> center + ratio * (x - center), ratio not in {0, 1}.
template <Scalar T>
struct Homothety {
  Point<T> center;
  T ratio;

  Homothety(Point<T> c, T r) : center(std::move(c)), ratio(std::move(r)) {
    if (ratio == 0 || ratio == 1) {
      throw GeometryError(ErrorKind::InvalidInput, "homothety ratio must differ from 0 and 1");
    }
  }

  Point<T> apply(const Point<T>& x) const { return center + ratio * (x - center); }
  Homothety inverse() const { return Homothety(center, T(1) / ratio); }
};

/// Simplex vertices a_1..a_{n+1} and one point b_ij on each edge line.
template <Scalar T>
struct EdgePointSet {
  std::vector<Point<T>> vertices;
  std::map<PairIndex, Point<T>> edge_points;

  std::size_t dimension() const { return vertices.empty() ? 0 : vertices.front().dim(); }
  std::vector<Point<T>> edge_point_list() const {
    std::vector<Point<T>> out;
    for (const auto& [key, p] : edge_points) out.push_back(p);
    return out;
  }
};

template <Scalar T>
struct MenelausReport {
  std::map<PairIndex, T> lambdas;
  /// lambda_ij^-1 * lambda_ik * lambda_jk^-1 per triple i < j < k.
  std::map<TripleIndex, T> triple_products;
  /// |product - 1|, exactly 0 in rational mode iff the product is 1.
  std::map<TripleIndex, double> triple_residuals;
  std::optional<Hyperplane<T>> hyperplane;
  double hyperplane_residual = 0.0;
  bool degenerate = false;
  bool products_pass = false;
  bool coplanar = false;
  bool verdict = false;

  double max_triple_residual() const {
    double m = 0.0;
    for (const auto& [k, r] : triple_residuals) m = std::max(m, r);
    return m;
  }
};

inline std::string pair_label(const PairIndex& p) {
  return "(" + std::to_string(p.first + 1) + "," + std::to_string(p.second + 1) + ")";
}

/// The ratio lambda of the homothety with center b sending a_j to a_i, i.e.
/// a_i = b + lambda (a_j - b). Negative exactly when b lies strictly between
/// a_i and a_j.
template <Scalar T>
T signed_ratio(const Point<T>& a_i, const Point<T>& a_j, const Point<T>& b, const Tolerance& tol) {
  if (a_i.dim() != a_j.dim() || a_i.dim() != b.dim())
    throw GeometryError(ErrorKind::DimensionMismatch, "signed_ratio: dimension mismatch");
  const Point<T> edge = a_j - a_i;
  const double edge_len = norm(edge);
  if (negligible<T>(dot(edge, edge), 0.0, Tolerance{0.0, 0.0}) || edge_len == 0.0)
    throw GeometryError(ErrorKind::InvalidInput, "signed_ratio: a_i and a_j coincide");

  // Perpendicular offset of b from the line through a_i, a_j.
  const Point<T> w = b - a_i;
  const Point<T> perp = w - (dot(w, edge) / dot(edge, edge)) * edge;
  if constexpr (is_exact_v<T>) {
    if (dot(perp, perp) != 0) throw GeometryError(ErrorKind::NotOnLine, "edge point is off its edge line");
  } else {
    if (norm(perp) > tol.threshold(edge_len))
      throw GeometryError(ErrorKind::NotOnLine, "edge point is off its edge line");
  }

  const Point<T> to_i = a_i - b;
  const Point<T> to_j = a_j - b;
  const bool at_i = is_exact_v<T> ? dot(to_i, to_i) == 0 : norm(to_i) <= tol.threshold(edge_len);
  const bool at_j = is_exact_v<T> ? dot(to_j, to_j) == 0 : norm(to_j) <= tol.threshold(edge_len);
  if (at_i || at_j) throw GeometryError(ErrorKind::CoincidesWithVertex, "edge point coincides with a vertex");
  return dot(to_i, to_j) / dot(to_j, to_j);
}

template <Scalar T>
void validate_edge_point_set(const EdgePointSet<T>& eps, const Tolerance& tol) {
  const std::size_t n = eps.dimension();
  if (n == 0 || eps.vertices.size() != n + 1)
    throw GeometryError(ErrorKind::InvalidInput, "edge-point set needs n+1 vertices in E^n");
  if (!affinely_independent<T>(eps.vertices, tol))
    throw GeometryError(ErrorKind::DependentVertices, "simplex vertices are affinely dependent");
  for (int i = 0; i <= static_cast<int>(n); ++i) {
    for (int j = i + 1; j <= static_cast<int>(n); ++j) {
      const auto it = eps.edge_points.find({i, j});
      if (it == eps.edge_points.end())
        throw GeometryError(ErrorKind::InvalidInput, "missing edge point " + pair_label({i, j}))
            .with_indices({i + 1, j + 1});
      if (it->second.dim() != n)
        throw GeometryError(ErrorKind::DimensionMismatch, "edge point " + pair_label({i, j}) + " has wrong dimension")
            .with_indices({i + 1, j + 1});
    }
  }
  if (eps.edge_points.size() != n * (n + 1) / 2)
    throw GeometryError(ErrorKind::InvalidInput, "unexpected edge point keys");
}

/// lambda_ij^-1 lambda_ik lambda_jk^-1 evaluated as (lambda_ik / lambda_ij) /
/// lambda_jk so that large and small ratios cancel pairwise.
template <Scalar T>
T triple_product(const T& l_ij, const T& l_ik, const T& l_jk) {
  return (l_ik / l_ij) / l_jk;
}

/// All signed ratios, the per-triple products and a hyperplane fitted to the
/// edge points. The verdict needs both the product criterion and the
/// hyperplane residual to pass.
template <Scalar T>
MenelausReport<T> menelaus_products(const EdgePointSet<T>& eps, const Tolerance& tol) {
  if constexpr (!is_exact_v<T>) tol.validate();
  validate_edge_point_set(eps, tol);
  const int count = static_cast<int>(eps.vertices.size());
  MenelausReport<T> report;
  for (const auto& [key, b] : eps.edge_points) {
    try {
      report.lambdas.emplace(key, signed_ratio(eps.vertices[key.first], eps.vertices[key.second], b, tol));
    } catch (const GeometryError& e) {
      throw e.with_indices({key.first + 1, key.second + 1});
    }
  }
  const double bound = tol.residual_bound();
  report.products_pass = true;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      for (int k = j + 1; k < count; ++k) {
        const T prod = triple_product(report.lambdas.at({i, j}), report.lambdas.at({i, k}), report.lambdas.at({j, k}));
        const double residual = std::fabs(to_double(T(prod - 1)));
        const bool ok = is_exact_v<T> ? prod == 1 : residual <= bound;
        report.products_pass = report.products_pass && ok;
        report.triple_products.emplace(TripleIndex{i, j, k}, prod);
        report.triple_residuals.emplace(TripleIndex{i, j, k}, residual);
      }
    }
  }

  const std::vector<Point<T>> pts = eps.edge_point_list();
  try {
    const HyperplaneFit<T> fit = fit_hyperplane<T>(pts, tol);
    report.hyperplane = fit.plane;
    report.hyperplane_residual = fit.residual;
    report.coplanar = is_exact_v<T> ? fit.span_dimension < static_cast<int>(eps.dimension())
                                    : fit.residual <= bound;
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::DegenerateConfiguration) throw;
    // Fewer than n-1 affine dimensions: contained in many hyperplanes.
    report.degenerate = true;
    report.hyperplane = canonical_hyperplane_through<T>(pts, tol);
    report.hyperplane_residual = relative_residual<T>(*report.hyperplane, pts);
    report.coplanar = true;
  }
  report.verdict = report.products_pass && report.coplanar;
  return report;
}

template <Scalar T>
void validate_weights(std::span<const T> weights, std::size_t expected) {
  if (weights.size() != expected)
    throw GeometryError(ErrorKind::InvalidInput, "expected " + std::to_string(expected) + " weights");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0)) throw GeometryError(ErrorKind::InvalidInput, "weights must be positive");
    for (std::size_t j = i + 1; j < weights.size(); ++j) {
      if (weights[i] == weights[j])
        throw GeometryError(ErrorKind::EqualWeights, "weights must be pairwise distinct")
            .with_indices({static_cast<int>(i) + 1, static_cast<int>(j) + 1});
    }
  }
}

/// b_ij = (mu_j a_i - mu_i a_j) / (mu_j - mu_i). The resulting signed ratios
/// are lambda_ij = mu_i / mu_j, so every triple product equals 1.
template <Scalar T>
EdgePointSet<T> edge_points_from_weights(std::span<const Point<T>> vertices, std::span<const T> weights,
                                         const Tolerance& tol) {
  validate_weights(weights, vertices.size());
  if (vertices.empty() || !affinely_independent(vertices, tol))
    throw GeometryError(ErrorKind::DependentVertices, "simplex vertices are affinely dependent");
  EdgePointSet<T> eps;
  eps.vertices.assign(vertices.begin(), vertices.end());
  const int count = static_cast<int>(vertices.size());
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const T& mi = weights[i];
      const T& mj = weights[j];
      eps.edge_points.emplace(PairIndex{i, j}, (mj * vertices[i] - mi * vertices[j]) / T(mj - mi));
    }
  }
  return eps;
}

/// Zero set of the affine functional g with g(a_k) = mu_k. It contains every
/// edge point produced by edge_points_from_weights.
template <Scalar T>
Hyperplane<T> monge_hyperplane_from_weights(std::span<const Point<T>> vertices, std::span<const T> weights,
                                            const Tolerance& tol) {
  validate_weights(weights, vertices.size());
  if (vertices.empty() || !affinely_independent(vertices, tol))
    throw GeometryError(ErrorKind::DependentVertices, "simplex vertices are affinely dependent");
  const std::size_t n = vertices.front().dim();
  Rows<T> system;
  for (const auto& v : vertices) {
    std::vector<T> row = v.coords;
    row.push_back(T(1));
    system.push_back(std::move(row));
  }
  const auto solution = detail::solve_square<T>(system, std::vector<T>(weights.begin(), weights.end()), tol);
  if (!solution) throw GeometryError(ErrorKind::DependentVertices, "weight system is singular");
  std::vector<T> normal(solution->begin(), solution->begin() + static_cast<std::ptrdiff_t>(n));
  const T offset = -(*solution)[n];
  bool zero = true;
  for (const auto& c : normal) zero = zero && c == 0;
  if (zero) throw GeometryError(ErrorKind::EqualWeights, "constant weight functional has no zero set");
  return Hyperplane<T>::normalized(std::move(normal), offset);
}

}  // namespace monge
