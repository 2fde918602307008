#include "monge/noneuclid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "monge/kernel.hpp"

namespace monge {

namespace {

void require_compatible(const XnPoint& x, const XnPoint& y) {
  if (x.geometry != y.geometry) throw GeometryError(ErrorKind::GeometryMismatch, "points from different geometries");
  if (x.v.size() != y.v.size()) throw GeometryError(ErrorKind::DimensionMismatch, "points of different dimension");
}

/// Rows whose dot product with w equals B(w, x).
Rows<double> bilinear_rows(std::span<const XnPoint> pts) {
  Rows<double> rows;
  for (const auto& p : pts) {
    std::vector<double> r(p.v.data(), p.v.data() + p.v.size());
    if (p.geometry == XnGeometry::Hyperbolic) r[0] = -r[0];
    rows.push_back(std::move(r));
  }
  return rows;
}

Eigen::VectorXd normalize_by_largest(Eigen::VectorXd w) {
  Eigen::Index lead = 0;
  for (Eigen::Index i = 1; i < w.size(); ++i) {
    if (std::fabs(w(i)) > std::fabs(w(lead))) lead = i;
  }
  return w / w(lead);
}

struct SectionFit {
  XnHyperplaneFit fit;
  int rank = 0;
  bool spacelike = true;
};

SectionFit fit_section(std::span<const XnPoint> pts, const Tolerance& tol) {
  if (pts.empty()) throw GeometryError(ErrorKind::InvalidInput, "no points given");
  for (const auto& p : pts) require_compatible(pts.front(), p);
  const XnGeometry g = pts.front().geometry;
  const Eigen::Index ambient = pts.front().v.size();
  const Rows<double> rows = bilinear_rows(pts);
  SectionFit out{XnHyperplaneFit{XnHyperplane{g, Eigen::VectorXd::Zero(ambient)}, 0.0}, rank(rows, tol), true};
  const Eigen::MatrixXd m = detail::to_eigen(rows, static_cast<std::size_t>(ambient));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd w = normalize_by_largest(svd.matrixV().col(ambient - 1));
  out.fit.plane.normal = w;
  out.fit.residual = (m * w).cwiseAbs().maxCoeff();
  if (g == XnGeometry::Hyperbolic) {
    out.spacelike = bilinear(g, w, w) > tol.threshold(w.squaredNorm());
  }
  return out;
}

}  // namespace

const char* to_string(XnGeometry g) { return g == XnGeometry::Sphere ? "spherical" : "hyperbolic"; }

double bilinear(XnGeometry g, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double d = x.dot(y);
  return g == XnGeometry::Sphere ? d : d - 2.0 * x(0) * y(0);
}

XnPoint make_xn_point(XnGeometry g, Eigen::VectorXd v, const Tolerance& tol) {
  if (v.size() < 2) throw GeometryError(ErrorKind::InvalidInput, "model points need at least two coordinates");
  if (!v.allFinite()) throw GeometryError(ErrorKind::InvalidInput, "non-finite coordinate");
  if (g == XnGeometry::Sphere) {
    if (std::fabs(v.norm() - 1.0) > tol.threshold(1.0))
      throw GeometryError(ErrorKind::InvalidInput, "sphere point is not a unit vector");
  } else {
    if (!(v(0) > 0.0)) throw GeometryError(ErrorKind::InvalidInput, "hyperboloid point must have x_0 > 0");
    if (std::fabs(bilinear(g, v, v) + 1.0) > tol.threshold(v(0) * v(0)))
      throw GeometryError(ErrorKind::InvalidInput, "hyperboloid point does not satisfy <x,x> = -1");
  }
  return XnPoint{g, std::move(v)};
}

std::optional<XnPoint> project_to_model(XnGeometry g, const Eigen::VectorXd& v) {
  if (g == XnGeometry::Sphere) {
    const double len = v.norm();
    if (len == 0.0) return std::nullopt;
    return XnPoint{g, v / len};
  }
  const double q = bilinear(g, v, v);
  if (!(q < 0.0) || !(v(0) > 0.0)) return std::nullopt;
  return XnPoint{g, v / std::sqrt(-q)};
}

double geodesic_distance(const XnPoint& x, const XnPoint& y) {
  require_compatible(x, y);
  if (x.geometry == XnGeometry::Sphere) {
    // Equals arccos(x . y) for unit vectors without its loss of precision
    // near 0 and pi.
    return 2.0 * std::atan2((x.v - y.v).norm(), (x.v + y.v).norm());
  }
  // q = -<x,y>, with q - 1 = <x-y, x-y> / 2 evaluated without cancellation.
  const Eigen::VectorXd diff = x.v - y.v;
  const double q_minus_one = std::max(0.0, 0.5 * bilinear(XnGeometry::Hyperbolic, diff, diff));
  const double q = 1.0 + q_minus_one;
  return std::log(q + std::sqrt(q_minus_one * (q + 1.0)));
}

bool arc_contains(const XnPoint& x, const XnPoint& z, const XnPoint& y, const Tolerance& tol) {
  require_compatible(x, z);
  require_compatible(x, y);
  const double xz = geodesic_distance(x, z);
  if (x.geometry == XnGeometry::Sphere && xz >= std::numbers::pi - kAntipodalGuard)
    throw GeometryError(ErrorKind::AntipodalPoints, "arc endpoints are antipodal");
  const double excess = geodesic_distance(x, y) + geodesic_distance(y, z) - xz;
  return excess <= tol.threshold(xz);
}

XnPoint xn_homothety_image(const XnPoint& c, const XnPoint& p, double ratio) {
  require_compatible(c, p);
  if (!(ratio > 0.0)) throw GeometryError(ErrorKind::InvalidInput, "homothety ratio must be positive");
  const double d = geodesic_distance(c, p);
  if (d == 0.0) throw GeometryError(ErrorKind::InvalidInput, "homothety center coincides with the point");
  const XnGeometry g = c.geometry;
  const double t = ratio * d;
  if (g == XnGeometry::Sphere) {
    if (d >= std::numbers::pi - kAntipodalGuard)
      throw GeometryError(ErrorKind::AntipodalPoints, "center and point are antipodal");
    if (t >= std::numbers::pi - kAntipodalGuard)
      throw GeometryError(ErrorKind::ParameterOutOfRange, "image would pass the antipode of the center");
  }
  // Unit tangent at c pointing toward p.
  const Eigen::VectorXd w = p.v - (bilinear(g, c.v, p.v) / bilinear(g, c.v, c.v)) * c.v;
  const Eigen::VectorXd u = w / std::sqrt(bilinear(g, w, w));
  Eigen::VectorXd r = g == XnGeometry::Sphere ? Eigen::VectorXd(c.v * std::cos(t) + u * std::sin(t))
                                              : Eigen::VectorXd(c.v * std::cosh(t) + u * std::sinh(t));
  return project_to_model(g, r).value_or(XnPoint{g, r});
}

double xn_lambda_from_distances(XnGeometry g, double dist_ib, double dist_bj) {
  if (g == XnGeometry::Sphere) return std::sin(dist_ib) / std::sin(dist_bj);
  return std::sinh(dist_ib) / std::sinh(dist_bj);
}

double xn_lambda(const XnPoint& a_i, const XnPoint& a_j, const XnPoint& b, const Tolerance& tol) {
  require_compatible(a_i, a_j);
  require_compatible(a_i, b);
  const XnGeometry g = a_i.geometry;
  const double d_ij = geodesic_distance(a_i, a_j);
  if (d_ij <= tol.abs) throw GeometryError(ErrorKind::InvalidInput, "a_i and a_j coincide");
  if (g == XnGeometry::Sphere && d_ij >= std::numbers::pi - kAntipodalGuard)
    throw GeometryError(ErrorKind::AntipodalPoints, "a_i and a_j are antipodal");

  Eigen::MatrixXd span(a_i.v.size(), 2);
  span.col(0) = a_i.v;
  span.col(1) = a_j.v;
  const Eigen::Vector2d coef = span.colPivHouseholderQr().solve(b.v);
  if ((span * coef - b.v).norm() > tol.threshold(b.v.norm()))
    throw GeometryError(ErrorKind::NotOnLine, "edge point is off the line through a_i and a_j");

  const double d_ib = geodesic_distance(a_i, b);
  const double d_bj = geodesic_distance(b, a_j);
  if (d_ib <= tol.threshold(d_ij) || d_bj <= tol.threshold(d_ij))
    throw GeometryError(ErrorKind::CoincidesWithVertex, "edge point coincides with a vertex");
  if (!arc_contains(a_i, b, a_j, tol))
    throw GeometryError(ErrorKind::ArcOrderViolation, "a_j is not on the arc from a_i to the edge point");

  if (g == XnGeometry::Sphere) return std::fabs(coef(1)) / std::fabs(coef(0));
  return xn_lambda_from_distances(g, d_ib, d_bj);
}

bool xn_independent(std::span<const XnPoint> points, const Tolerance& tol) {
  if (points.empty()) return true;
  for (const auto& p : points) require_compatible(points.front(), p);
  if (points.size() > static_cast<std::size_t>(points.front().v.size())) return false;
  Rows<double> rows;
  for (const auto& p : points) rows.emplace_back(p.v.data(), p.v.data() + p.v.size());
  return rank(rows, tol) == static_cast<int>(points.size());
}

XnHyperplaneFit xn_hyperplane_fit(std::span<const XnPoint> points, const Tolerance& tol) {
  tol.validate();
  if (points.empty()) throw GeometryError(ErrorKind::InvalidInput, "no points given");
  const int n = static_cast<int>(points.front().dimension());
  if (static_cast<int>(points.size()) < n)
    throw GeometryError(ErrorKind::InvalidInput, "need at least n points for a section of X^n");
  const SectionFit s = fit_section(points, tol);
  if (s.rank < n)
    throw GeometryError(ErrorKind::DegenerateConfiguration, "points do not determine a unique section")
        .with_span_dimension(s.rank);
  if (!s.spacelike) throw GeometryError(ErrorKind::NotSpacelike, "best section normal is not spacelike");
  return s.fit;
}

void validate_xn_config(const XnConfig& config, const Tolerance& tol) {
  const Eigen::Index n = config.dimension();
  if (n < 1 || static_cast<Eigen::Index>(config.vertices.size()) != n + 1)
    throw GeometryError(ErrorKind::InvalidInput, "configuration needs n+1 vertices on X^n");
  for (const auto& v : config.vertices) {
    if (v.geometry != config.geometry) throw GeometryError(ErrorKind::GeometryMismatch, "vertex from another geometry");
    if (v.v.size() != n + 1) throw GeometryError(ErrorKind::DimensionMismatch, "vertices of different dimension");
  }
  if (!xn_independent(config.vertices, tol))
    throw GeometryError(ErrorKind::DependentVertices, "vertices are not independent");
  const int count = static_cast<int>(n) + 1;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const auto it = config.edge_points.find({i, j});
      if (it == config.edge_points.end())
        throw GeometryError(ErrorKind::InvalidInput, "missing edge point " + pair_label({i, j}))
            .with_indices({i + 1, j + 1});
      if (it->second.geometry != config.geometry || it->second.v.size() != n + 1)
        throw GeometryError(ErrorKind::DimensionMismatch, "edge point " + pair_label({i, j}) + " does not match")
            .with_indices({i + 1, j + 1});
    }
  }
  if (config.edge_points.size() != static_cast<std::size_t>(count * (count - 1) / 2))
    throw GeometryError(ErrorKind::InvalidInput, "unexpected edge point keys");
}

XnMenelausReport verify_prop2(const XnConfig& config, const Tolerance& tol) {
  tol.validate();
  validate_xn_config(config, tol);
  XnMenelausReport report;
  for (const auto& [key, b] : config.edge_points) {
    try {
      report.lambdas.emplace(key, xn_lambda(config.vertices[key.first], config.vertices[key.second], b, tol));
    } catch (const GeometryError& e) {
      throw e.with_indices({key.first + 1, key.second + 1});
    }
  }
  const double bound = tol.residual_bound();
  const int count = static_cast<int>(config.vertices.size());
  report.products_pass = true;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      for (int k = j + 1; k < count; ++k) {
        const double prod =
            triple_product(report.lambdas.at({i, j}), report.lambdas.at({i, k}), report.lambdas.at({j, k}));
        const double residual = std::fabs(prod - 1.0);
        report.triple_products.emplace(TripleIndex{i, j, k}, prod);
        report.triple_residuals.emplace(TripleIndex{i, j, k}, residual);
        report.products_pass = report.products_pass && residual <= bound;
      }
    }
  }
  std::vector<XnPoint> pts;
  for (const auto& [key, b] : config.edge_points) pts.push_back(b);
  const SectionFit s = fit_section(pts, tol);
  report.spacelike = s.spacelike;
  report.hyperplane_residual = s.fit.residual;
  if (s.spacelike) report.hyperplane = s.fit.plane;
  report.contained = s.spacelike && s.fit.residual <= bound;
  report.verdict = report.products_pass && report.contained;
  return report;
}

XnConfig xn_edge_points_from_weights(std::span<const XnPoint> vertices, std::span<const double> weights,
                                     const Tolerance& tol) {
  validate_weights<double>(weights, vertices.size());
  if (vertices.empty()) throw GeometryError(ErrorKind::InvalidInput, "no vertices given");
  const XnGeometry g = vertices.front().geometry;
  if (static_cast<Eigen::Index>(vertices.size()) != vertices.front().v.size())
    throw GeometryError(ErrorKind::InvalidInput, "configuration needs n+1 vertices on X^n");
  if (!xn_independent(vertices, tol))
    throw GeometryError(ErrorKind::DependentVertices, "vertices are not independent");
  XnConfig config{g, {vertices.begin(), vertices.end()}, {}};
  const int count = static_cast<int>(vertices.size());
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const Eigen::VectorXd v = -weights[j] * vertices[i].v + weights[i] * vertices[j].v;
      const auto b = project_to_model(g, v);
      if (!b)
        throw GeometryError(ErrorKind::NotTimelike, "weight combination for " + pair_label({i, j}) + " is not timelike")
            .with_indices({i + 1, j + 1});
      bool ordered;
      try {
        ordered = arc_contains(vertices[i], *b, vertices[j], tol);
      } catch (const GeometryError& e) {
        throw e.with_indices({i + 1, j + 1});
      }
      if (!ordered)
        throw GeometryError(ErrorKind::ArcOrderViolation, "arc order fails for " + pair_label({i, j}))
            .with_indices({i + 1, j + 1});
      config.edge_points.emplace(PairIndex{i, j}, *b);
    }
  }
  return config;
}

XnHyperplane xn_hyperplane_from_weights(std::span<const XnPoint> vertices, std::span<const double> weights) {
  validate_weights<double>(weights, vertices.size());
  if (vertices.empty() || static_cast<Eigen::Index>(vertices.size()) != vertices.front().v.size())
    throw GeometryError(ErrorKind::InvalidInput, "configuration needs n+1 vertices on X^n");
  const Rows<double> rows = bilinear_rows(vertices);
  const Eigen::MatrixXd m = detail::to_eigen(rows, rows.size());
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) throw GeometryError(ErrorKind::DependentVertices, "vertices are not independent");
  const Eigen::VectorXd mu = Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  return XnHyperplane{vertices.front().geometry, normalize_by_largest(lu.solve(mu))};
}

}  // namespace monge
