#include <gtest/gtest.h>

#include <random>

#include "monge/monge.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace monge;
using oracle::q;

namespace {

const Tolerance kTol = Tolerance::uniform(1e-9);

template <Scalar T>
MongeConfig<T> circles() {
  return {{make_ball<T>({0, 0}, 3), make_ball<T>({6, 0}, 2), make_ball<T>({0, 6}, 1)}};
}

template <Scalar T>
MongeConfig<T> corner_halfplanes(bool floor_at_zero) {
  MongeConfig<T> c;
  for (int i = 1; i <= 3; ++i) {
    const T floor = floor_at_zero ? T(0) : T(1) / T(i);
    c.shapes.push_back(make_halfspace_set<T>({{{1, 0}, 0}, {{0, 1}, floor}, {{1, 1}, T(4 - i)}}, kTol));
  }
  return c;
}

}  // namespace

TEST(RunMonge, ThreeCircles) {
  const auto r = run_monge(circles<Rational>(), kTol);
  EXPECT_EQ(r.centers.at({0, 1}), (Point<Rational>{18, 0}));
  EXPECT_EQ(r.centers.at({0, 2}), (Point<Rational>{0, 9}));
  EXPECT_EQ(r.centers.at({1, 2}), (Point<Rational>{-6, 12}));
  std::array<std::array<Rational, 3>, 3> m{{{18, 0, 1}, {0, 9, 1}, {-6, 12, 1}}};
  EXPECT_EQ(oracle::det3(m), 0);
  EXPECT_EQ(r.hyperplane->normal, (std::vector<Rational>{1, 2}));
  EXPECT_EQ(r.hyperplane->offset, 18);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_FALSE(r.degenerate);
  EXPECT_TRUE(r.verdict);

  const auto rd = run_monge(circles<double>(), kTol);
  EXPECT_TRUE(rd.verdict);
  EXPECT_LE(rd.residual, 1e-12);
  EXPECT_TRUE(same_hyperplane(*rd.hyperplane, *r.hyperplane, 1e-12));
}

TEST(RunMonge, ShapesAreSortedBySize) {
  auto c = circles<Rational>();
  std::swap(c.shapes[0], c.shapes[2]);
  const auto r = run_monge(c, kTol);
  EXPECT_EQ(r.order, (std::vector<int>{2, 1, 0}));
  EXPECT_EQ(r.centers.at({0, 1}), (Point<Rational>{18, 0}));
}

TEST(RunMonge, EqualSizesAreRejected) {
  MongeConfig<double> c{{make_ball<double>({0, 0}, 2), make_ball<double>({6, 0}, 1), make_ball<double>({0, 6}, 2)}};
  try {
    run_monge(c, kTol);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RatioNotGreaterThanOne);
    EXPECT_EQ(e.indices(), (std::vector<int>{1, 3}));
  }
}

TEST(RunMonge, CornerHalfplanes) {
  const auto r = run_monge(corner_halfplanes<Rational>(false), kTol);
  EXPECT_EQ(r.centers.at({0, 1}), (Point<Rational>{0, -1}));
  EXPECT_EQ(r.centers.at({0, 2}), (Point<Rational>{0, 0}));
  EXPECT_EQ(r.centers.at({1, 2}), (Point<Rational>{0, q(1, 5)}));
  EXPECT_EQ(r.ratios.at({0, 1}), q(4, 3));
  EXPECT_EQ(r.ratios.at({0, 2}), 3);
  EXPECT_EQ(r.ratios.at({1, 2}), q(9, 4));
  EXPECT_EQ(r.hyperplane->normal, (std::vector<Rational>{1, 0}));
  EXPECT_EQ(r.hyperplane->offset, 0);
  EXPECT_TRUE(r.verdict);
  EXPECT_FALSE(r.degenerate);

  const auto rd = run_monge(corner_halfplanes<double>(false), kTol);
  EXPECT_TRUE(rd.verdict);
  for (const auto& [k, c] : rd.centers) EXPECT_NEAR(c[0], 0.0, 1e-12);
}

TEST(RunMonge, CoincidentCentersAreDegenerate) {
  const auto r = run_monge(corner_halfplanes<Rational>(true), kTol);
  for (const auto& [k, c] : r.centers) EXPECT_EQ(c, (Point<Rational>{0, 0}));
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(r.verdict);
  EXPECT_EQ(r.span_dimension, 0);
  EXPECT_EQ(r.hyperplane->normal, (std::vector<Rational>{1, 0}));
  EXPECT_EQ(r.hyperplane->offset, 0);

  const auto rd = run_monge(corner_halfplanes<double>(true), kTol);
  EXPECT_TRUE(rd.degenerate);
  EXPECT_TRUE(rd.verdict);
}

TEST(RunMonge, Errors) {
  MongeConfig<double> two{{make_ball<double>({0, 0}, 2), make_ball<double>({1, 0}, 1)}};
  EXPECT_EQ(kind_of([&] { run_monge(two, kTol); }), ErrorKind::InvalidInput);
  MongeConfig<double> mixed{{make_ball<double>({0, 0}, 3), make_ball<double>({1, 0}, 2), make_ball<double>({0, 1, 0}, 1)}};
  EXPECT_EQ(kind_of([&] { run_monge(mixed, kTol); }), ErrorKind::DimensionMismatch);
  MongeConfig<double> none;
  EXPECT_EQ(kind_of([&] { run_monge(none, kTol); }), ErrorKind::InvalidInput);
}

TEST(CrossRatio, Examples) {
  const auto balls = cross_ratio_consistency(run_monge(circles<Rational>(), kTol));
  ASSERT_EQ(balls.size(), 1u);
  EXPECT_EQ(balls.at({0, 1, 2}), 0.0);
  const auto halves = cross_ratio_consistency(run_monge(corner_halfplanes<Rational>(false), kTol));
  EXPECT_EQ(halves.at({0, 1, 2}), 0.0);
  // two intervals on the line: a single pair, no triples
  MongeConfig<Rational> line{{make_ball<Rational>({0}, 2), make_ball<Rational>({5}, 1)}};
  EXPECT_TRUE(cross_ratio_consistency(run_monge(line, kTol)).empty());
}

// Properties.

TEST(MongeProperty, BallFamiliesMatchRadiusWeightOracle) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 250; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<Point<double>> centers;
    do {
      centers.clear();
      for (int k = 0; k <= n; ++k) {
        Point<double> p = Point<double>::zero(n);
        for (auto& c : p.coords) c = u(rng);
        centers.push_back(p);
      }
    } while (!affinely_independent<double>(centers, Tolerance{0.0, 0.05}));
    std::vector<double> radii{1 + std::fabs(u(rng)) / 10};
    while (static_cast<int>(radii.size()) <= n) radii.push_back(radii.back() * (1.1 + std::fabs(u(rng)) / 20));
    MongeConfig<double> config;
    for (int k = 0; k <= n; ++k) config.shapes.push_back(make_ball(centers[k], radii[k]));
    const auto r = run_monge(config, kTol);
    EXPECT_TRUE(r.verdict);
    EXPECT_LE(r.residual, 1e-8);
    EXPECT_TRUE(same_hyperplane(*r.hyperplane, monge_hyperplane_from_weights<double>(centers, radii, kTol), 1e-8));
    for (const auto& [key, l] : r.ratios) {
      const double expected = radii[r.order[key.first]] / radii[r.order[key.second]];
      EXPECT_NEAR(l, expected, 1e-12 * expected);
    }
  }
}

TEST(MongeProperty, PerturbedVertexIsNotHomothetic) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<Point<double>> base;
    for (int k = 0; k < n + 3; ++k) {
      Point<double> p = Point<double>::zero(n);
      for (auto& c : p.coords) c = u(rng);
      base.push_back(p);
    }
    MongeConfig<double> config;
    double scale = 3.0;
    for (int k = 0; k <= n; ++k, scale /= 1.5) {
      Point<double> c = Point<double>::zero(n);
      for (auto& x : c.coords) x = 10 * u(rng);
      config.shapes.push_back(apply_homothety(Homothety<double>(c, scale), Shape<double>(make_vertex_set(base))));
    }
    EXPECT_TRUE(run_monge(config, kTol).verdict);
    auto& victim = std::get<VertexSet<double>>(config.shapes[1 + trial % n]).vertices;
    const double diam = std::sqrt(squared_diameter<double>(victim));
    victim[trial % victim.size()][0] += 0.01 * diam;
    EXPECT_EQ(kind_of([&] { run_monge(config, kTol); }), ErrorKind::NotHomothetic);
  }
}

TEST(MongeProperty, CentersAreOrderIndependent) {
  auto config = circles<Rational>();
  const auto reference = run_monge(config, kTol);
  std::sort(config.shapes.begin(), config.shapes.end(), [](const auto& a, const auto& b) {
    return std::get<Ball<Rational>>(a).center[1] > std::get<Ball<Rational>>(b).center[1];
  });
  const auto r = run_monge(config, kTol);
  EXPECT_EQ(r.centers, reference.centers);
  EXPECT_EQ(r.ratios, reference.ratios);
}
