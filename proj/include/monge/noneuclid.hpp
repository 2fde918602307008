#pragma once

// Points of the unit sphere S^n and of the hyperboloid model H^n, both
// embedded in E^{n+1}; geodesic distance, arcs, homotheties along
// geodesics, sin/sinh edge ratios and hyperplane sections, plus the
// ratio-product verifier for points on the edge lines of a simplex.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "monge/menelaus.hpp"
#include "monge/scalar.hpp"

namespace monge {

enum class XnGeometry { Sphere, Hyperbolic };

const char* to_string(XnGeometry g);

/// Distances closer than this to pi count as antipodal on the sphere.
inline constexpr double kAntipodalGuard = 1e-9;

struct XnPoint {
  XnGeometry geometry;
  Eigen::VectorXd v;

  /// Ambient dimension n+1 minus one.
  Eigen::Index dimension() const { return v.size() - 1; }
};

/// Checks the model invariant (unit norm, or Lorentz norm -1 with x_0 > 0).
XnPoint make_xn_point(XnGeometry g, Eigen::VectorXd v, const Tolerance& tol);

/// Rescales v onto the model. Hyperbolic input must be future timelike.
std::optional<XnPoint> project_to_model(XnGeometry g, const Eigen::VectorXd& v);

/// Euclidean dot product (sphere) or Lorentz form -x0 y0 + sum xk yk.
double bilinear(XnGeometry g, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// {x in X^n : B(normal, x) = 0}; spacelike normal in the hyperbolic case.
struct XnHyperplane {
  XnGeometry geometry;
  Eigen::VectorXd normal;  // largest-magnitude entry equals 1
};

struct XnHyperplaneFit {
  XnHyperplane plane;
  double residual = 0.0;  // max |B(normal, x)|
};

double geodesic_distance(const XnPoint& x, const XnPoint& y);

/// y lies on the arc from x to z: |xy| + |yz| - |xz| within tolerance.
bool arc_contains(const XnPoint& x, const XnPoint& z, const XnPoint& y, const Tolerance& tol);

/// The point at distance ratio * |cp| from c along the geodesic through p.
XnPoint xn_homothety_image(const XnPoint& c, const XnPoint& p, double ratio);

/// sin|a_i b| / sin|b a_j| (sphere, evaluated as |beta|/|alpha| for
/// b = alpha a_i + beta a_j) or sinh|a_i b| / sinh|b a_j| (hyperbolic).
/// Requires b on the line through a_i, a_j with a_j on the arc a_i b.
double xn_lambda(const XnPoint& a_i, const XnPoint& a_j, const XnPoint& b, const Tolerance& tol);

/// The same ratio from the two distances |a_i b| and |b a_j|.
double xn_lambda_from_distances(XnGeometry g, double dist_ib, double dist_bj);

/// Linear independence of the embedding vectors.
bool xn_independent(std::span<const XnPoint> points, const Tolerance& tol);

/// Least-squares section through the points.
XnHyperplaneFit xn_hyperplane_fit(std::span<const XnPoint> points, const Tolerance& tol);

struct XnConfig {
  XnGeometry geometry;
  std::vector<XnPoint> vertices;
  std::map<PairIndex, XnPoint> edge_points;

  Eigen::Index dimension() const { return vertices.empty() ? 0 : vertices.front().dimension(); }
};

struct XnMenelausReport {
  std::map<PairIndex, double> lambdas;
  std::map<TripleIndex, double> triple_products;
  std::map<TripleIndex, double> triple_residuals;
  std::optional<XnHyperplane> hyperplane;
  double hyperplane_residual = 0.0;
  bool spacelike = true;
  bool products_pass = false;
  bool contained = false;
  bool verdict = false;

  double max_triple_residual() const {
    double m = 0.0;
    for (const auto& [k, r] : triple_residuals) m = std::max(m, r);
    return m;
  }
};

void validate_xn_config(const XnConfig& config, const Tolerance& tol);

XnMenelausReport verify_prop2(const XnConfig& config, const Tolerance& tol);

/// b_ij = -mu_j a_i + mu_i a_j projected onto the model. Fails when the
/// hyperbolic combination is not future timelike or the arc order breaks.
XnConfig xn_edge_points_from_weights(std::span<const XnPoint> vertices, std::span<const double> weights,
                                     const Tolerance& tol);

/// The normal w with B(w, a_k) = mu_k; its section contains every b_ij of
/// xn_edge_points_from_weights.
XnHyperplane xn_hyperplane_from_weights(std::span<const XnPoint> vertices, std::span<const double> weights);

}  // namespace monge
