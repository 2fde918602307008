#include <gtest/gtest.h>

#include "monge/figure.hpp"
#include "monge/scenario.hpp"
#include "support.hpp"

using namespace monge;

namespace {

Json circles_doc() {
  return Json::parse(R"({
    "geometry": "euclidean", "dimension": 2, "kind": "shapes",
    "shapes": [
      {"type": "ball", "center": [0, 0], "radius": 3},
      {"type": "ball", "center": [6, 0], "radius": 2},
      {"type": "ball", "center": [0, 6], "radius": 1}
    ],
    "expect": true
  })");
}

Json midpoints_doc() {
  return Json::parse(R"({
    "geometry": "euclidean", "dimension": 2, "kind": "edge_points",
    "vertices": [[0, 0], [2, 0], [0, 2]],
    "edge_points": [
      {"i": 1, "j": 2, "point": [1, 0]},
      {"i": 1, "j": 3, "point": [0, 1]},
      {"i": 2, "j": 3, "point": [1, 1]}
    ]
  })");
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Scalars, Codec) {
  EXPECT_EQ(decode_scalar<Rational>(Json("-3/6")), Rational(-1, 2));
  EXPECT_EQ(decode_scalar<Rational>(Json("0.25")), Rational(1, 4));
  EXPECT_EQ(decode_scalar<Rational>(Json(0.5)), Rational(1, 2));
  EXPECT_EQ(encode_scalar(Rational(4, 2)), Json("2"));
  EXPECT_EQ(encode_scalar(Rational(-9, 4)), Json("-9/4"));
  EXPECT_DOUBLE_EQ(decode_scalar<double>(Json("1/3")), 1.0 / 3.0);
}

TEST(Scenario, CirclesFloatAndExact) {
  const auto fl = verify_scenario(circles_doc(), VerifyOptions{});
  EXPECT_TRUE(fl.verdict);
  EXPECT_EQ(fl.exit_code(), 0);
  EXPECT_EQ(fl.report["mode"], "float");
  VerifyOptions ex;
  ex.exact = true;
  const auto r = verify_scenario(circles_doc(), ex);
  EXPECT_EQ(r.report["hyperplane"]["normal"], Json::parse(R"(["1","2"])"));
  EXPECT_EQ(r.report["hyperplane"]["offset"], Json("18"));
  EXPECT_EQ(r.report["residual"].get<double>(), 0.0);
  EXPECT_EQ(r.report["centers"].size(), 3u);
}

TEST(Scenario, ExpectationDrivesExitCode) {
  Json doc = midpoints_doc();
  const auto none = verify_scenario(doc, VerifyOptions{});
  EXPECT_FALSE(none.verdict);
  EXPECT_EQ(none.exit_code(), 1);
  doc["expect"] = false;
  EXPECT_EQ(verify_scenario(doc, VerifyOptions{}).exit_code(), 0);
}

TEST(Scenario, Roundtrip) {
  VerifyOptions ex;
  ex.exact = true;
  const auto config = decode_shapes_scenario<Rational>(circles_doc(), ex.tol);
  const Json again = scenario_json(config, true);
  EXPECT_EQ(decode_shapes_scenario<Rational>(again, ex.tol).shapes.size(), 3u);
  EXPECT_EQ(verify_scenario(again, ex).report["hyperplane"], verify_scenario(circles_doc(), ex).report["hyperplane"]);

  const auto eps = decode_edge_scenario<Rational>(midpoints_doc());
  EXPECT_EQ(scenario_json(eps)["edge_points"], scenario_json(decode_edge_scenario<Rational>(scenario_json(eps)))["edge_points"]);
}

TEST(Scenario, SchemaErrors) {
  Json doc = circles_doc();
  doc.erase("geometry");
  EXPECT_THROW(verify_scenario(doc, VerifyOptions{}), ScenarioError);
  doc = circles_doc();
  doc["kind"] = "triangles";
  EXPECT_THROW(verify_scenario(doc, VerifyOptions{}), ScenarioError);
  doc = circles_doc();
  doc["shapes"][0]["center"] = Json::array({1, 2, 3});
  EXPECT_ANY_THROW(verify_scenario(doc, VerifyOptions{}));
  EXPECT_THROW(verify_scenario(Json::array(), VerifyOptions{}), ScenarioError);
}

TEST(Scenario, ExactModeRefusesCurvedGeometry) {
  const Json doc = Json::parse(R"({
    "geometry": "spherical", "dimension": 2, "kind": "edge_points",
    "vertices": [[1,0,0],[0,1,0],[0,0,1]],
    "edge_points": [{"i":1,"j":2,"point":[-0.8944271909999159,0.4472135954999579,0]}]
  })");
  VerifyOptions ex;
  ex.exact = true;
  EXPECT_EQ(kind_of([&] { verify_scenario(doc, ex); }), ErrorKind::ExactModeUnsupported);
}

TEST(Scenario, ErrorJson) {
  const Json g = error_json(GeometryError(ErrorKind::EqualWeights, "tie").with_indices({1, 3}));
  EXPECT_EQ(g["error"], "EqualWeights");
  EXPECT_EQ(g["indices"], Json::array({1, 3}));
  EXPECT_EQ(error_json(ScenarioError("x"))["error"], "SchemaError");
  EXPECT_EQ(error_json(std::runtime_error("x"))["error"], "Error");
}

TEST(Figure, CirclesSvg) {
  const std::string svg = render_figure(circles_doc());
  EXPECT_EQ(svg, render_figure(circles_doc()));
  EXPECT_EQ(count(svg, "class=\"center-marker\""), 3u);
  EXPECT_EQ(count(svg, "class=\"monge-line\""), 1u);
  EXPECT_NE(svg.find("(1,2)"), std::string::npos);
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
}

TEST(Figure, Rejections) {
  EXPECT_THROW(render_figure(midpoints_doc()), ScenarioError);
  Json doc = circles_doc();
  doc["dimension"] = 3;
  for (auto& s : doc["shapes"]) s["center"].push_back(0);
  EXPECT_THROW(render_figure(doc), ScenarioError);
}
