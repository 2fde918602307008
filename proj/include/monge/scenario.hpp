#pragma once

// Scenario and report JSON documents.
//
// Scenario:
//   { "geometry": "euclidean" | "spherical" | "hyperbolic",
//     "dimension": n,
//     "kind": "shapes" | "edge_points",
//     "shapes": [ {"type":"ball","center":[...],"radius":r}
//               | {"type":"vertices","points":[[...], ...]}
//               | {"type":"halfspaces","constraints":[{"normal":[...],"offset":d}, ...]} ],
//     "vertices": [[...], ...],
//     "edge_points": [ {"i":1,"j":2,"point":[...]}, ... ],
//     "expect": true | false }
//
// Numbers are JSON numbers or exact strings ("p/q", "-3", "0.25"). Euclidean
// coordinates have n entries, spherical/hyperbolic ones n+1. Pair indices are
// 1-based. Reports serialize doubles with round-trip precision and
// rationals as "p/q" strings.

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "monge/menelaus.hpp"
#include "monge/monge.hpp"
#include "monge/noneuclid.hpp"
#include "monge/shapes.hpp"

namespace monge {

using Json = nlohmann::json;

enum class Geometry { Euclidean, Spherical, Hyperbolic };

const char* to_string(Geometry g);
Geometry parse_geometry(const std::string& name);

/// Malformed scenario documents (schema violations).
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <Scalar T>
Json encode_scalar(const T& v);
template <Scalar T>
T decode_scalar(const Json& j);

template <Scalar T>
Json scenario_json(const MongeConfig<T>& config, std::optional<bool> expect = std::nullopt);
template <Scalar T>
Json scenario_json(const EdgePointSet<T>& eps, std::optional<bool> expect = std::nullopt);
Json scenario_json(const XnConfig& config, std::optional<bool> expect = std::nullopt);

template <Scalar T>
MongeConfig<T> decode_shapes_scenario(const Json& doc, const Tolerance& tol);
template <Scalar T>
EdgePointSet<T> decode_edge_scenario(const Json& doc);
XnConfig decode_xn_scenario(const Json& doc, const Tolerance& tol);

template <Scalar T>
Json encode_hyperplane(const Hyperplane<T>& h);

template <Scalar T>
Json report_json(const MongeReport<T>& report);
template <Scalar T>
Json report_json(const MenelausReport<T>& report);
Json report_json(const XnMenelausReport& report);

struct VerifyOptions {
  Tolerance tol = Tolerance::uniform(1e-9);
  bool exact = false;
};

struct VerifyOutcome {
  Json report;
  bool verdict = false;
  std::optional<bool> expect;

  /// 0 when the verdict matches the expectation (or is true without one).
  int exit_code() const { return verdict == expect.value_or(true) ? 0 : 1; }
};

/// Validates the document and dispatches to the Monge pipeline, the
/// Euclidean ratio-product verifier, or the spherical/hyperbolic verifier.
/// Throws ScenarioError for schema problems, GeometryError for geometric
/// failures.
VerifyOutcome verify_scenario(const Json& scenario, const VerifyOptions& options);

/// {"error": kind, "message": ..., "indices": [...]} for any exception.
Json error_json(const std::exception& e);

}  // namespace monge
