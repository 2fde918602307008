#include "monge/scenario.hpp"

#include <chrono>
#include <set>

namespace monge {

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ScenarioError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

const Json& array_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_array()) throw ScenarioError(std::string("field '") + key + "' must be an array");
  return v;
}

template <Scalar T>
Point<T> decode_point(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw ScenarioError(std::string(what) + " must be an array of " + std::to_string(n) + " numbers");
  Point<T> p;
  for (const auto& c : j) p.coords.push_back(decode_scalar<T>(c));
  return p;
}

template <Scalar T>
Json encode_coords(std::span<const T> v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(encode_scalar<T>(c));
  return out;
}

template <Scalar T>
Json encode_point(const Point<T>& p) {
  return encode_coords<T>(p.coords);
}

Json encode_vector(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::size_t scenario_dimension(const Json& doc) {
  const Json& d = field(doc, "dimension");
  if (!d.is_number_integer() || d.get<long long>() < 1) throw ScenarioError("'dimension' must be a positive integer");
  return static_cast<std::size_t>(d.get<long long>());
}

PairIndex decode_pair(const Json& entry, std::size_t count) {
  const Json& i = field(entry, "i");
  const Json& j = field(entry, "j");
  if (!i.is_number_integer() || !j.is_number_integer()) throw ScenarioError("edge point indices must be integers");
  const long long a = i.get<long long>();
  const long long b = j.get<long long>();
  if (a < 1 || b <= a || b > static_cast<long long>(count))
    throw ScenarioError("edge point indices must satisfy 1 <= i < j <= n+1");
  return {static_cast<int>(a - 1), static_cast<int>(b - 1)};
}

Json triple_entry(const TripleIndex& t) { return Json{{"i", t[0] + 1}, {"j", t[1] + 1}, {"k", t[2] + 1}}; }

Json pair_entry(const PairIndex& p) { return Json{{"i", p.first + 1}, {"j", p.second + 1}}; }

template <Scalar T>
Json run_shapes(const Json& doc, const Tolerance& tol, bool& verdict) {
  const MongeConfig<T> config = decode_shapes_scenario<T>(doc, tol);
  const MongeReport<T> report = run_monge(config, tol);
  verdict = report.verdict;
  return report_json(report);
}

template <Scalar T>
Json run_edges(const Json& doc, const Tolerance& tol, bool& verdict) {
  const EdgePointSet<T> eps = decode_edge_scenario<T>(doc);
  const MenelausReport<T> report = menelaus_products(eps, tol);
  verdict = report.verdict;
  return report_json(report);
}

}  // namespace

const char* to_string(Geometry g) {
  switch (g) {
    case Geometry::Euclidean: return "euclidean";
    case Geometry::Spherical: return "spherical";
    case Geometry::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

Geometry parse_geometry(const std::string& name) {
  if (name == "euclidean") return Geometry::Euclidean;
  if (name == "spherical") return Geometry::Spherical;
  if (name == "hyperbolic") return Geometry::Hyperbolic;
  throw ScenarioError("unknown geometry '" + name + "'");
}

template <>
Json encode_scalar<double>(const double& v) {
  return v;
}
template <>
Json encode_scalar<Rational>(const Rational& v) {
  return format_rational(v);
}

template <>
double decode_scalar<double>(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return to_double(parse_rational(j.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what());
    }
  }
  throw ScenarioError("expected a number or a \"p/q\" string");
}

template <>
Rational decode_scalar<Rational>(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return from_double<Rational>(j.get<double>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what());
    }
  }
  throw ScenarioError("expected a number or a \"p/q\" string");
}

template <Scalar T>
Json scenario_json(const MongeConfig<T>& config, std::optional<bool> expect) {
  Json shapes = Json::array();
  for (const auto& s : config.shapes) {
    if (const auto* b = std::get_if<Ball<T>>(&s)) {
      shapes.push_back({{"type", "ball"}, {"center", encode_point(b->center)}, {"radius", encode_scalar(b->radius)}});
    } else if (const auto* v = std::get_if<VertexSet<T>>(&s)) {
      Json pts = Json::array();
      for (const auto& p : v->vertices) pts.push_back(encode_point(p));
      shapes.push_back({{"type", "vertices"}, {"points", pts}});
    } else {
      Json cons = Json::array();
      for (const auto& c : std::get<HalfspaceSet<T>>(s).constraints)
        cons.push_back({{"normal", encode_coords<T>(c.normal)}, {"offset", encode_scalar(c.offset)}});
      shapes.push_back({{"type", "halfspaces"}, {"constraints", cons}});
    }
  }
  Json doc = {{"geometry", "euclidean"}, {"dimension", config.dimension()}, {"kind", "shapes"}, {"shapes", shapes}};
  if (expect) doc["expect"] = *expect;
  return doc;
}

template <Scalar T>
Json scenario_json(const EdgePointSet<T>& eps, std::optional<bool> expect) {
  Json vertices = Json::array();
  for (const auto& v : eps.vertices) vertices.push_back(encode_point(v));
  Json edges = Json::array();
  for (const auto& [key, p] : eps.edge_points) {
    Json e = pair_entry(key);
    e["point"] = encode_point(p);
    edges.push_back(e);
  }
  Json doc = {{"geometry", "euclidean"},
              {"dimension", eps.dimension()},
              {"kind", "edge_points"},
              {"vertices", vertices},
              {"edge_points", edges}};
  if (expect) doc["expect"] = *expect;
  return doc;
}

Json scenario_json(const XnConfig& config, std::optional<bool> expect) {
  Json vertices = Json::array();
  for (const auto& v : config.vertices) vertices.push_back(encode_vector(v.v));
  Json edges = Json::array();
  for (const auto& [key, p] : config.edge_points) {
    Json e = pair_entry(key);
    e["point"] = encode_vector(p.v);
    edges.push_back(e);
  }
  Json doc = {{"geometry", config.geometry == XnGeometry::Sphere ? "spherical" : "hyperbolic"},
              {"dimension", config.dimension()},
              {"kind", "edge_points"},
              {"vertices", vertices},
              {"edge_points", edges}};
  if (expect) doc["expect"] = *expect;
  return doc;
}

template <Scalar T>
MongeConfig<T> decode_shapes_scenario(const Json& doc, const Tolerance& tol) {
  const std::size_t n = scenario_dimension(doc);
  const Json& shapes = array_field(doc, "shapes");
  if (shapes.empty()) throw ScenarioError("'shapes' must not be empty");
  MongeConfig<T> config;
  for (const auto& s : shapes) {
    const Json& type = field(s, "type");
    if (!type.is_string()) throw ScenarioError("shape 'type' must be a string");
    const std::string name = type.get<std::string>();
    if (name == "ball") {
      config.shapes.push_back(make_ball(decode_point<T>(field(s, "center"), n, "ball center"),
                                        decode_scalar<T>(field(s, "radius"))));
    } else if (name == "vertices") {
      std::vector<Point<T>> pts;
      for (const auto& p : array_field(s, "points")) pts.push_back(decode_point<T>(p, n, "vertex"));
      config.shapes.push_back(make_vertex_set(std::move(pts)));
    } else if (name == "halfspaces") {
      std::vector<Halfspace<T>> cons;
      for (const auto& c : array_field(s, "constraints")) {
        cons.push_back(Halfspace<T>{decode_point<T>(field(c, "normal"), n, "halfspace normal").coords,
                                    decode_scalar<T>(field(c, "offset"))});
      }
      config.shapes.push_back(make_halfspace_set(cons, tol));
    } else {
      throw ScenarioError("unknown shape type '" + name + "'");
    }
  }
  return config;
}

template <Scalar T>
EdgePointSet<T> decode_edge_scenario(const Json& doc) {
  const std::size_t n = scenario_dimension(doc);
  EdgePointSet<T> eps;
  const Json& vertices = array_field(doc, "vertices");
  if (vertices.size() != n + 1) throw ScenarioError("'vertices' must hold n+1 points");
  for (const auto& v : vertices) eps.vertices.push_back(decode_point<T>(v, n, "vertex"));
  for (const auto& e : array_field(doc, "edge_points")) {
    const PairIndex key = decode_pair(e, n + 1);
    if (!eps.edge_points.emplace(key, decode_point<T>(field(e, "point"), n, "edge point")).second)
      throw ScenarioError("duplicate edge point " + pair_label(key));
  }
  return eps;
}

XnConfig decode_xn_scenario(const Json& doc, const Tolerance& tol) {
  const Geometry geometry = parse_geometry(field(doc, "geometry").get<std::string>());
  if (geometry == Geometry::Euclidean) throw ScenarioError("expected a spherical or hyperbolic scenario");
  const XnGeometry g = geometry == Geometry::Spherical ? XnGeometry::Sphere : XnGeometry::Hyperbolic;
  const std::size_t n = scenario_dimension(doc);
  auto decode = [&](const Json& j, const char* what) {
    const Point<double> p = decode_point<double>(j, n + 1, what);
    return make_xn_point(g, Eigen::Map<const Eigen::VectorXd>(p.coords.data(), static_cast<Eigen::Index>(n + 1)), tol);
  };
  XnConfig config{g, {}, {}};
  const Json& vertices = array_field(doc, "vertices");
  if (vertices.size() != n + 1) throw ScenarioError("'vertices' must hold n+1 points");
  for (const auto& v : vertices) config.vertices.push_back(decode(v, "vertex"));
  for (const auto& e : array_field(doc, "edge_points")) {
    const PairIndex key = decode_pair(e, n + 1);
    if (!config.edge_points.emplace(key, decode(field(e, "point"), "edge point")).second)
      throw ScenarioError("duplicate edge point " + pair_label(key));
  }
  return config;
}

template <Scalar T>
Json encode_hyperplane(const Hyperplane<T>& h) {
  return Json{{"normal", encode_coords<T>(h.normal)}, {"offset", encode_scalar(h.offset)}};
}

template <Scalar T>
Json report_json(const MongeReport<T>& report) {
  Json centers = Json::array();
  for (const auto& [key, c] : report.centers) {
    Json e = pair_entry(key);
    e["point"] = encode_point(c);
    centers.push_back(e);
  }
  Json ratios = Json::array();
  for (const auto& [key, r] : report.ratios) {
    Json e = pair_entry(key);
    e["value"] = encode_scalar(r);
    ratios.push_back(e);
  }
  Json triples = Json::array();
  for (const auto& [key, r] : cross_ratio_consistency(report)) {
    Json e = triple_entry(key);
    e["residual"] = r;
    triples.push_back(e);
  }
  Json order = Json::array();
  for (int k : report.order) order.push_back(k + 1);
  return Json{{"kind", "shapes"},
              {"verdict", report.verdict},
              {"degenerate", report.degenerate},
              {"span_dimension", report.span_dimension},
              {"residual", report.residual},
              {"hyperplane", report.hyperplane ? encode_hyperplane(*report.hyperplane) : Json(nullptr)},
              {"order", order},
              {"centers", centers},
              {"ratios", ratios},
              {"triples", triples}};
}

template <Scalar T>
Json report_json(const MenelausReport<T>& report) {
  Json lambdas = Json::array();
  for (const auto& [key, l] : report.lambdas) {
    Json e = pair_entry(key);
    e["value"] = encode_scalar(l);
    lambdas.push_back(e);
  }
  Json triples = Json::array();
  for (const auto& [key, p] : report.triple_products) {
    Json e = triple_entry(key);
    e["product"] = encode_scalar(p);
    e["residual"] = report.triple_residuals.at(key);
    triples.push_back(e);
  }
  return Json{{"kind", "edge_points"},
              {"verdict", report.verdict},
              {"products_pass", report.products_pass},
              {"coplanar", report.coplanar},
              {"degenerate", report.degenerate},
              {"hyperplane", report.hyperplane ? encode_hyperplane(*report.hyperplane) : Json(nullptr)},
              {"hyperplane_residual", report.hyperplane_residual},
              {"max_triple_residual", report.max_triple_residual()},
              {"lambdas", lambdas},
              {"triples", triples}};
}

Json report_json(const XnMenelausReport& report) {
  Json lambdas = Json::array();
  for (const auto& [key, l] : report.lambdas) {
    Json e = pair_entry(key);
    e["value"] = l;
    lambdas.push_back(e);
  }
  Json triples = Json::array();
  for (const auto& [key, p] : report.triple_products) {
    Json e = triple_entry(key);
    e["product"] = p;
    e["residual"] = report.triple_residuals.at(key);
    triples.push_back(e);
  }
  return Json{{"kind", "edge_points"},
              {"verdict", report.verdict},
              {"products_pass", report.products_pass},
              {"contained", report.contained},
              {"spacelike", report.spacelike},
              {"hyperplane", report.hyperplane ? Json{{"normal", encode_vector(report.hyperplane->normal)}} : Json(nullptr)},
              {"hyperplane_residual", report.hyperplane_residual},
              {"max_triple_residual", report.max_triple_residual()},
              {"lambdas", lambdas},
              {"triples", triples}};
}

VerifyOutcome verify_scenario(const Json& scenario, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerifyOutcome out;
  try {
    if (!scenario.is_object()) throw ScenarioError("scenario must be a JSON object");
    const Geometry geometry = parse_geometry(field(scenario, "geometry").get<std::string>());
    const std::string kind = field(scenario, "kind").get<std::string>();
    const std::size_t n = scenario_dimension(scenario);
    if (scenario.contains("expect")) {
      if (!scenario.at("expect").is_boolean()) throw ScenarioError("'expect' must be a boolean");
      out.expect = scenario.at("expect").get<bool>();
    }
    if (kind != "shapes" && kind != "edge_points") throw ScenarioError("unknown kind '" + kind + "'");
    if (!options.exact) options.tol.validate();

    if (geometry != Geometry::Euclidean) {
      if (options.exact)
        throw GeometryError(ErrorKind::ExactModeUnsupported,
                            "exact mode supports Euclidean scenarios only; spherical and hyperbolic checks are "
                            "tolerance based");
      if (kind != "edge_points") throw ScenarioError("spherical and hyperbolic scenarios must be edge_points");
      const XnMenelausReport report = verify_prop2(decode_xn_scenario(scenario, options.tol), options.tol);
      out.verdict = report.verdict;
      out.report = report_json(report);
    } else if (kind == "shapes") {
      out.report = options.exact ? run_shapes<Rational>(scenario, options.tol, out.verdict)
                                 : run_shapes<double>(scenario, options.tol, out.verdict);
    } else {
      out.report = options.exact ? run_edges<Rational>(scenario, options.tol, out.verdict)
                                 : run_edges<double>(scenario, options.tol, out.verdict);
    }
    out.report["geometry"] = to_string(geometry);
    out.report["dimension"] = n;
  } catch (const Json::exception& e) {
    throw ScenarioError(std::string("malformed scenario: ") + e.what());
  }
  out.report["mode"] = options.exact ? "exact" : "float";
  out.report["tolerance"] = {{"abs", options.tol.abs}, {"rel", options.tol.rel}};
  out.report["expect"] = out.expect ? Json(*out.expect) : Json(nullptr);
  out.report["input"] = scenario;
  const auto elapsed = std::chrono::steady_clock::now() - start;
  out.report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  return out;
}

Json error_json(const std::exception& e) {
  Json out;
  if (const auto* g = dynamic_cast<const GeometryError*>(&e)) {
    out["error"] = std::string(to_string(g->kind()));
    if (!g->indices().empty()) out["indices"] = g->indices();
    if (g->span_dimension()) out["span_dimension"] = *g->span_dimension();
  } else if (dynamic_cast<const ScenarioError*>(&e) || dynamic_cast<const Json::exception*>(&e)) {
    out["error"] = "SchemaError";
  } else if (dynamic_cast<const std::invalid_argument*>(&e)) {
    out["error"] = "InvalidArgument";
  } else {
    out["error"] = "Error";
  }
  out["message"] = e.what();
  return out;
}

template Json scenario_json<double>(const MongeConfig<double>&, std::optional<bool>);
template Json scenario_json<Rational>(const MongeConfig<Rational>&, std::optional<bool>);
template Json scenario_json<double>(const EdgePointSet<double>&, std::optional<bool>);
template Json scenario_json<Rational>(const EdgePointSet<Rational>&, std::optional<bool>);
template MongeConfig<double> decode_shapes_scenario<double>(const Json&, const Tolerance&);
template MongeConfig<Rational> decode_shapes_scenario<Rational>(const Json&, const Tolerance&);
template EdgePointSet<double> decode_edge_scenario<double>(const Json&);
template EdgePointSet<Rational> decode_edge_scenario<Rational>(const Json&);
template Json encode_hyperplane<double>(const Hyperplane<double>&);
template Json encode_hyperplane<Rational>(const Hyperplane<Rational>&);
template Json report_json<double>(const MongeReport<double>&);
template Json report_json<Rational>(const MongeReport<Rational>&);
template Json report_json<double>(const MenelausReport<double>&);
template Json report_json<Rational>(const MenelausReport<Rational>&);

}  // namespace monge
