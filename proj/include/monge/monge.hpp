#pragma once

// The generalized Monge pipeline: n+1 pairwise homothetic shapes in E^n,
// every homothety center h_ij (h_ij(C_j) = C_i, i < j), and the hyperplane
// containing all of them.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "monge/kernel.hpp"
#include "monge/menelaus.hpp"
#include "monge/shapes.hpp"

namespace monge {

template <Scalar T>
struct MongeConfig {
  std::vector<Shape<T>> shapes;

  std::size_t dimension() const { return shapes.empty() ? 0 : shape_dimension(shapes.front()); }
};

template <Scalar T>
struct MongeReport {
  /// order[k] is the 0-based input position of the k-th shape after sorting
  /// by decreasing size. Pair keys refer to sorted positions.
  std::vector<int> order;
  std::map<PairIndex, Point<T>> centers;
  std::map<PairIndex, T> ratios;
  std::optional<Hyperplane<T>> hyperplane;
  double residual = 0.0;
  int span_dimension = 0;
  bool degenerate = false;
  bool verdict = false;

  std::vector<Point<T>> center_list() const {
    std::vector<Point<T>> out;
    for (const auto& [k, c] : centers) out.push_back(c);
    return out;
  }
};

namespace detail {

/// Sorted positions for bounded families; halfspace families keep the
/// supplied order because their size is undefined.
template <Scalar T>
std::vector<int> size_order(const MongeConfig<T>& config, const Tolerance& tol) {
  std::vector<int> order(config.shapes.size());
  std::iota(order.begin(), order.end(), 0);
  const bool bounded = std::none_of(config.shapes.begin(), config.shapes.end(), [](const Shape<T>& s) {
    return std::holds_alternative<HalfspaceSet<T>>(s);
  });
  if (!bounded) return order;
  std::vector<T> sizes;
  for (const auto& s : config.shapes) sizes.push_back(size_squared(s, tol));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sizes[a] > sizes[b]; });
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const T& big = sizes[order[k]];
    const T& small = sizes[order[k + 1]];
    if (negligible<T>(T(big - small), std::max(to_double(big), 1e-300), Tolerance{0.0, tol.rel})) {
      const int a = std::min(order[k], order[k + 1]);
      const int b = std::max(order[k], order[k + 1]);
      throw GeometryError(ErrorKind::RatioNotGreaterThanOne, "two shapes have equal size")
          .with_indices({a + 1, b + 1});
    }
  }
  return order;
}

}  // namespace detail

/// Detects every pairwise homothety, collects the centers and fits the
/// common hyperplane. Centers spanning fewer than n-1 dimensions (all
/// coincident, say) are flagged degenerate and accepted.
template <Scalar T>
MongeReport<T> run_monge(const MongeConfig<T>& config, const Tolerance& tol) {
  if constexpr (!is_exact_v<T>) tol.validate();
  const std::size_t n = config.dimension();
  if (n == 0) throw GeometryError(ErrorKind::InvalidInput, "no shapes given");
  for (const auto& s : config.shapes) {
    if (shape_dimension(s) != n) throw GeometryError(ErrorKind::DimensionMismatch, "shapes live in different dimensions");
  }
  if (config.shapes.size() != n + 1)
    throw GeometryError(ErrorKind::InvalidInput,
                        "expected " + std::to_string(n + 1) + " shapes in E^" + std::to_string(n));

  MongeReport<T> report;
  report.order = detail::size_order(config, tol);
  const int count = static_cast<int>(config.shapes.size());
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const int oi = report.order[i];
      const int oj = report.order[j];
      try {
        const Homothety<T> h = detect_homothety(config.shapes[oj], config.shapes[oi], tol);
        report.centers.emplace(PairIndex{i, j}, h.center);
        report.ratios.emplace(PairIndex{i, j}, h.ratio);
      } catch (const GeometryError& e) {
        throw e.with_indices({std::min(oi, oj) + 1, std::max(oi, oj) + 1});
      }
    }
  }

  const std::vector<Point<T>> pts = report.center_list();
  try {
    const HyperplaneFit<T> fit = fit_hyperplane<T>(pts, tol);
    report.hyperplane = fit.plane;
    report.residual = fit.residual;
    report.span_dimension = fit.span_dimension;
    report.verdict = is_exact_v<T> ? fit.span_dimension < static_cast<int>(n) : fit.residual <= tol.residual_bound();
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::DegenerateConfiguration) throw;
    report.degenerate = true;
    report.span_dimension = e.span_dimension().value_or(0);
    report.hyperplane = canonical_hyperplane_through<T>(pts, tol);
    report.residual = relative_residual<T>(*report.hyperplane, pts);
    report.verdict = true;
  }
  return report;
}

/// |lambda_ij lambda_jk / lambda_ik - 1| for every triple i < j < k.
template <Scalar T>
std::map<TripleIndex, double> cross_ratio_consistency(const MongeReport<T>& report) {
  std::map<TripleIndex, double> out;
  int count = 0;
  for (const auto& [key, r] : report.ratios) count = std::max(count, key.second + 1);
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      for (int k = j + 1; k < count; ++k) {
        const T& l_ij = report.ratios.at({i, j});
        const T& l_jk = report.ratios.at({j, k});
        const T& l_ik = report.ratios.at({i, k});
        out.emplace(TripleIndex{i, j, k}, std::fabs(to_double(T((l_ij / l_ik) * l_jk - 1))));
      }
    }
  }
  return out;
}

}  // namespace monge
