#include "monge/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monge {

namespace {

const Tolerance kBuild = Tolerance::uniform(1e-9);
/// Fraction of the steepest edge/hyperplane angle sine a perturbed edge needs.
constexpr double kTransversal = 0.5;

template <Scalar T>
T draw(SplitMix64& rng, double lo, double hi) {
  if constexpr (is_exact_v<T>) {
    const long long q = rng.range(1, 32);
    const long long k = rng.range(static_cast<long long>(std::ceil(lo * q)), static_cast<long long>(std::floor(hi * q)));
    return Rational(k, q);
  } else {
    return rng.uniform(lo, hi);
  }
}

/// A multiplier of at least `gap`, up to 1.5 * gap.
template <Scalar T>
T draw_factor(SplitMix64& rng, double gap) {
  const double f = gap * (1.0 + 0.5 * rng.uniform01());
  if constexpr (is_exact_v<T>) {
    return Rational(static_cast<long long>(std::ceil(f * 8.0)), 8);
  } else {
    return f;
  }
}

template <Scalar T>
Point<T> draw_point(SplitMix64& rng, int n, double lo, double hi) {
  Point<T> p;
  for (int k = 0; k < n; ++k) p.coords.push_back(draw<T>(rng, lo, hi));
  return p;
}

/// Smallest accepted singular value ratio of a simplex's edge matrix.
Tolerance conditioning(std::size_t n) { return Tolerance{0.0, std::min(0.1, 0.6 / static_cast<double>(n))}; }

template <Scalar T>
bool well_conditioned(const std::vector<Point<T>>& pts) {
  Rows<double> rows;
  for (std::size_t k = 1; k < pts.size(); ++k) rows.push_back(to_double(Point<T>(pts[k] - pts[0])).coords);
  return rank(rows, conditioning(pts.front().dim())) == static_cast<int>(pts.front().dim());
}

template <Scalar T>
std::vector<Point<T>> draw_simplex(SplitMix64& rng, int n, double half_width) {
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<Point<T>> pts;
    for (int k = 0; k <= n; ++k) pts.push_back(draw_point<T>(rng, n, -half_width, half_width));
    if (well_conditioned(pts)) return pts;
  }
  throw GeometryError(ErrorKind::DependentVertices, "could not draw independent vertices");
}

/// Increasing sizes whose consecutive ratios are at least `gap`.
template <Scalar T>
std::vector<T> ladder(SplitMix64& rng, int count, double lo, double hi, double gap) {
  std::vector<T> out{draw<T>(rng, lo, hi)};
  while (static_cast<int>(out.size()) < count) out.push_back(out.back() * draw_factor<T>(rng, gap));
  return out;
}

template <class V>
void shuffle(SplitMix64& rng, std::vector<V>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

template <Scalar T>
T perturbation(double p) {
  if constexpr (is_exact_v<T>) {
    return Rational(std::llround(p * 1e6), 1000000);
  } else {
    return p;
  }
}

template <class Map>
typename Map::iterator pick(SplitMix64& rng, Map& m) {
  auto it = m.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(rng.below(m.size())));
  return it;
}

XnPoint draw_sphere_point(SplitMix64& rng, int n) {
  while (true) {
    Eigen::VectorXd v(n + 1);
    for (int k = 0; k <= n; ++k) v(k) = rng.uniform(-1.0, 1.0);
    const double len = v.norm();
    if (len >= 0.2 && len <= 1.0) return XnPoint{XnGeometry::Sphere, v / len};
  }
}

/// Half-width of the tangent box for hyperbolic vertices. The weights must
/// fall by more than exp(diameter) per step, so the box shrinks with n.
double hyperbolic_spread(int n) { return 1.2 / n; }

/// Exponential map at (1, 0, ..., 0) of a tangent vector in the box.
XnPoint draw_hyperbolic_point(SplitMix64& rng, int n) {
  const double h = hyperbolic_spread(n);
  Eigen::VectorXd t(n);
  for (int k = 0; k < n; ++k) t(k) = rng.uniform(-h, h);
  const double r = t.norm();
  Eigen::VectorXd v(n + 1);
  v(0) = std::cosh(r);
  v.tail(n) = r > 0.0 ? Eigen::VectorXd(t * (std::sinh(r) / r)) : Eigen::VectorXd::Zero(n);
  return XnPoint{XnGeometry::Hyperbolic, v};
}

bool xn_well_conditioned(const std::vector<XnPoint>& pts) {
  Rows<double> rows;
  for (const auto& p : pts) rows.emplace_back(p.v.data(), p.v.data() + p.v.size());
  const int n = static_cast<int>(pts.size()) - 1;
  // hyperboloid vertices all lean on (1, 0, ..., 0); scale the bar by the box
  Tolerance t = conditioning(n);
  if (pts.front().geometry == XnGeometry::Hyperbolic) t.rel *= hyperbolic_spread(n) / 2;
  return rank(rows, t) == static_cast<int>(pts.size());
}

}  // namespace

std::uint64_t scenario_seed(std::uint64_t seed, int k) {
  SplitMix64 rng(seed);
  std::uint64_t out = rng.next();
  for (int i = 0; i < k; ++i) out = rng.next();
  return out;
}

const char* to_string(GenKind k) {
  switch (k) {
    case GenKind::Balls: return "balls";
    case GenKind::VertexSets: return "vertex_sets";
    case GenKind::EdgePoints: return "edge_points";
  }
  return "unknown";
}

GenKind parse_gen_kind(const std::string& name) {
  if (name == "balls") return GenKind::Balls;
  if (name == "vertex_sets") return GenKind::VertexSets;
  if (name == "edge_points") return GenKind::EdgePoints;
  throw std::invalid_argument("unknown generator kind '" + name + "'");
}

void GenSpec::validate() const {
  if (dimension < 2 || dimension > 16) throw std::invalid_argument("dimension must be in [2, 16]");
  if (count < 0) throw std::invalid_argument("count must be non-negative");
  if (!(ratio_gap > 1.0) || !std::isfinite(ratio_gap)) throw std::invalid_argument("ratio_gap must exceed 1");
  if (perturb && !(*perturb > 0.0 && *perturb < 1.0)) throw std::invalid_argument("perturb must lie in (0, 1)");
  if (kind != GenKind::EdgePoints && geometry != Geometry::Euclidean)
    throw std::invalid_argument("shape scenarios are Euclidean only");
  if (kind != GenKind::EdgePoints && perturb)
    throw std::invalid_argument("perturb applies to edge_points scenarios only");
  if (rational && geometry != Geometry::Euclidean)
    throw std::invalid_argument("rational coordinates are Euclidean only");
}

template <Scalar T>
MongeConfig<T> gen_ball_config(const GenSpec& spec, std::uint64_t seed) {
  spec.validate();
  SplitMix64 rng(seed);
  const int n = spec.dimension;
  const auto centers = draw_simplex<T>(rng, n, 10.0);
  const auto radii = ladder<T>(rng, n + 1, 0.5, 1.5, spec.ratio_gap);
  MongeConfig<T> config;
  for (int k = 0; k <= n; ++k) config.shapes.push_back(make_ball(centers[k], radii[n - k]));
  return config;
}

template <Scalar T>
MongeConfig<T> gen_vertex_config(const GenSpec& spec, std::uint64_t seed) {
  spec.validate();
  SplitMix64 rng(seed);
  const int n = spec.dimension;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    const long long m = rng.range(n + 1, 12);
    std::vector<Point<T>> pts;
    for (long long k = 0; k < m; ++k) pts.push_back(draw_point<T>(rng, n, -1.0, 1.0));
    const VertexSet<T> base = make_vertex_set(std::move(pts));
    const auto scales = ladder<T>(rng, n + 1, 0.3, 0.6, spec.ratio_gap);
    if (base.vertices.size() < 2 || std::find(scales.begin(), scales.end(), T(1)) != scales.end()) continue;
    MongeConfig<T> config;
    for (int k = n; k >= 0; --k) {
      const Homothety<T> h(draw_point<T>(rng, n, -10.0, 10.0), scales[k]);
      config.shapes.push_back(apply_homothety(h, Shape<T>(base)));
    }
    return config;
  }
  throw GeometryError(ErrorKind::InvalidInput, "could not draw a vertex-set family");
}

template <Scalar T>
EdgePointSet<T> gen_euclid_menelaus_case(const GenSpec& spec, bool positive, std::uint64_t seed) {
  spec.validate();
  if (!positive && !spec.perturb) throw std::invalid_argument("negative cases need a perturbation");
  SplitMix64 rng(seed);
  const int n = spec.dimension;
  const auto vertices = draw_simplex<T>(rng, n, 10.0);
  auto weights = ladder<T>(rng, n + 1, 1.0, 2.0, spec.ratio_gap);
  shuffle(rng, weights);
  EdgePointSet<T> eps = edge_points_from_weights<T>(vertices, weights, kBuild);
  if (positive) return eps;

  // An edge nearly parallel to the hyperplane barely moves off it, so the
  // perturbed pair is drawn among edges crossing it at a clear angle.
  const Hyperplane<double> plane = to_double(monge_hyperplane_from_weights<T>(vertices, weights, kBuild));
  const Point<double> normal(plane.normal);
  std::vector<double> crossing;
  for (const auto& [key, b] : eps.edge_points) {
    const Point<double> e = to_double(Point<T>(vertices[key.second] - vertices[key.first]));
    crossing.push_back(std::fabs(dot(normal, e)) / (norm(normal) * norm(e)));
  }
  const double steepest = *std::max_element(crossing.begin(), crossing.end());
  std::vector<std::size_t> eligible;
  for (std::size_t k = 0; k < crossing.size(); ++k)
    if (crossing[k] >= kTransversal * steepest) eligible.push_back(k);
  auto it = eps.edge_points.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(eligible[rng.below(eligible.size())]));

  // The offset is relative to the size of the whole edge-point set.
  const std::vector<Point<T>> pts = eps.edge_point_list();
  const Point<T> edge = vertices[it->first.second] - vertices[it->first.first];
  const T step = perturbation<T>(*spec.perturb * bounding_box_diameter<T>(pts) / norm(edge));
  const T sign = rng.below(2) == 0 ? T(1) : T(-1);
  Point<T> moved = it->second + (sign * step) * edge;
  if (moved == vertices[it->first.first] || moved == vertices[it->first.second]) {
    moved = it->second - (sign * step) * edge;
  }
  it->second = moved;
  return eps;
}

XnConfig gen_xn_menelaus_case(const GenSpec& spec, bool positive, std::uint64_t seed) {
  spec.validate();
  if (spec.geometry == Geometry::Euclidean) throw std::invalid_argument("expected a spherical or hyperbolic spec");
  if (!positive && !spec.perturb) throw std::invalid_argument("negative cases need a perturbation");
  SplitMix64 rng(seed);
  const int n = spec.dimension;
  const bool sphere = spec.geometry == Geometry::Spherical;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<XnPoint> vertices;
    for (int k = 0; k <= n; ++k) vertices.push_back(sphere ? draw_sphere_point(rng, n) : draw_hyperbolic_point(rng, n));
    if (!xn_well_conditioned(vertices)) continue;

    std::vector<double> weights;
    if (sphere) {
      weights = ladder<double>(rng, n + 1, 1.0, 2.0, spec.ratio_gap);
      shuffle(rng, weights);
    } else {
      // b_ij is future timelike beyond a_j only when mu_j / mu_i < exp(-|a_i a_j|),
      // so weights decrease along the index faster than the spread allows.
      double spread = 0.0;
      for (const auto& a : vertices)
        for (const auto& b : vertices) spread = std::max(spread, geodesic_distance(a, b));
      const double gap = std::max(spec.ratio_gap, std::exp(spread)) * (1.0 + rng.uniform(0.05, 0.5));
      weights = ladder<double>(rng, n + 1, 1.0, 2.0, gap);
      std::reverse(weights.begin(), weights.end());
    }

    XnConfig config;
    try {
      config = xn_edge_points_from_weights(vertices, weights, kBuild);
    } catch (const GeometryError&) {
      continue;
    }
    if (positive) return config;

    auto it = pick(rng, config.edge_points);
    const XnPoint& a_i = config.vertices[it->first.first];
    const XnPoint& a_j = config.vertices[it->first.second];
    const double sign = rng.below(2) == 0 ? 1.0 : -1.0;
    for (double s : {sign, -sign}) {
      try {
        const XnPoint moved = xn_homothety_image(a_i, it->second, 1.0 + s * *spec.perturb);
        if (geodesic_distance(moved, a_j) > 1e-6 && arc_contains(a_i, moved, a_j, kBuild)) {
          it->second = moved;
          return config;
        }
      } catch (const GeometryError&) {
      }
    }
  }
  throw GeometryError(ErrorKind::InvalidInput, "construction failed after the retry cap");
}

Json generate_scenario(const GenSpec& spec, int k) {
  spec.validate();
  const std::uint64_t seed = scenario_seed(spec.seed, k);
  const bool positive = !spec.perturb.has_value();
  if (spec.geometry != Geometry::Euclidean) return scenario_json(gen_xn_menelaus_case(spec, positive, seed), positive);
  auto emit = [&]<Scalar T>() -> Json {
    switch (spec.kind) {
      case GenKind::Balls: return scenario_json(gen_ball_config<T>(spec, seed), true);
      case GenKind::VertexSets: return scenario_json(gen_vertex_config<T>(spec, seed), true);
      case GenKind::EdgePoints: return scenario_json(gen_euclid_menelaus_case<T>(spec, positive, seed), positive);
    }
    return Json();
  };
  return spec.rational ? emit.template operator()<Rational>() : emit.template operator()<double>();
}

template MongeConfig<double> gen_ball_config<double>(const GenSpec&, std::uint64_t);
template MongeConfig<Rational> gen_ball_config<Rational>(const GenSpec&, std::uint64_t);
template MongeConfig<double> gen_vertex_config<double>(const GenSpec&, std::uint64_t);
template MongeConfig<Rational> gen_vertex_config<Rational>(const GenSpec&, std::uint64_t);
template EdgePointSet<double> gen_euclid_menelaus_case<double>(const GenSpec&, bool, std::uint64_t);
template EdgePointSet<Rational> gen_euclid_menelaus_case<Rational>(const GenSpec&, bool, std::uint64_t);

}  // namespace monge
