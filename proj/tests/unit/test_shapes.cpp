#include <gtest/gtest.h>

#include <random>

#include "monge/shapes.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace monge;
using oracle::q;

namespace {

const Tolerance kTol = Tolerance::uniform(1e-9);

template <Scalar T>
HalfspaceSet<T> corner_set(const T& floor, const T& cut) {
  return make_halfspace_set<T>({{{1, 0}, 0}, {{0, 1}, floor}, {{1, 1}, cut}}, kTol);
}

template <Scalar T>
VertexSet<T> unit_square(T dx = 0) {
  return make_vertex_set<T>({{dx, 0}, {dx + 1, 0}, {dx, 1}, {dx + 1, 1}});
}

}  // namespace

TEST(DetectHomothety, Balls) {
  const Shape<Rational> from = make_ball<Rational>({6, 0}, 2);
  const Shape<Rational> to = make_ball<Rational>({0, 0}, 3);
  const auto h = detect_homothety(from, to, kTol);
  EXPECT_EQ(h.ratio, q(3, 2));
  EXPECT_EQ(h.center.coords, oracle::external_center<Rational>({0, 0}, 3, {6, 0}, 2));
  EXPECT_EQ(h.center, (Point<Rational>{18, 0}));

  const auto hd = detect_homothety<double>(make_ball<double>({6, 0}, 2), make_ball<double>({0, 0}, 3), kTol);
  EXPECT_DOUBLE_EQ(hd.ratio, 1.5);
  EXPECT_NEAR(hd.center[0], 18.0, 1e-12);
  EXPECT_NEAR(hd.center[1], 0.0, 1e-12);
}

TEST(DetectHomothety, TranslatedSquareHasNoCenter) {
  EXPECT_EQ(kind_of([] {
              detect_homothety<Rational>(unit_square<Rational>(), unit_square<Rational>(5), kTol);
            }),
            ErrorKind::RatioNotGreaterThanOne);
  EXPECT_EQ(kind_of([] { detect_homothety<double>(unit_square<double>(), unit_square<double>(5), kTol); }),
            ErrorKind::RatioNotGreaterThanOne);
}

TEST(DetectHomothety, CornerHalfplanes) {
  const Shape<Rational> c2 = corner_set<Rational>(q(1, 2), 2);
  const Shape<Rational> c1 = corner_set<Rational>(1, 3);
  // Matched constraints give (1 - l) b_x = 0, l/2 + (1 - l) b_y = 1 and
  // 2 l + (1 - l)(b_x + b_y) = 3; eliminating (1 - l) b_y gives l directly.
  const Rational l = (Rational(3) - 1) / (Rational(2) - q(1, 2));
  const Rational by = (1 - l / 2) / (1 - l);
  ASSERT_EQ(l, q(4, 3));
  ASSERT_EQ(by, -1);
  const auto h = detect_homothety(c2, c1, kTol);
  EXPECT_EQ(h.ratio, l);
  EXPECT_EQ(h.center, (Point<Rational>{0, by}));

  const auto hd = detect_homothety<double>(corner_set<double>(0.5, 2), corner_set<double>(1, 3), kTol);
  EXPECT_NEAR(hd.ratio, 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(hd.center[0], 0.0, 1e-12);
  EXPECT_NEAR(hd.center[1], -1.0, 1e-12);
}

TEST(DetectHomothety, Errors) {
  // translates of a half-space
  const Shape<double> lo = make_halfspace_set<double>({{{0, 1}, 0}}, kTol);
  const Shape<double> hi = make_halfspace_set<double>({{{0, 1}, 1}}, kTol);
  EXPECT_EQ(kind_of([&] { detect_homothety(lo, hi, kTol); }), ErrorKind::NonUniqueHomothety);

  // normals that do not biject
  const Shape<double> a = make_halfspace_set<double>({{{1, 0}, 0}, {{0, 1}, 0}}, kTol);
  const Shape<double> b = make_halfspace_set<double>({{{1, 0}, 0}, {{1, 1}, 0}}, kTol);
  EXPECT_EQ(kind_of([&] { detect_homothety(a, b, kTol); }), ErrorKind::NotHomothetic);

  const Shape<double> tri = make_vertex_set<double>({{0, 0}, {1, 0}, {0, 1}});
  const Shape<double> bent = make_vertex_set<double>({{0, 0}, {2, 0}, {0, 2.5}});
  EXPECT_EQ(kind_of([&] { detect_homothety(tri, bent, kTol); }), ErrorKind::NotHomothetic);

  const Shape<double> dot1 = make_vertex_set<double>({{1, 1}});
  const Shape<double> dot2 = make_vertex_set<double>({{2, 2}});
  EXPECT_EQ(kind_of([&] { detect_homothety(dot1, dot2, kTol); }), ErrorKind::DegenerateShape);

  const Shape<double> ball = make_ball<double>({0, 0}, 1);
  EXPECT_EQ(kind_of([&] { detect_homothety(ball, tri, kTol); }), ErrorKind::InvalidInput);

  // smaller target: the ratio would be below one
  EXPECT_EQ(kind_of([] {
              detect_homothety<double>(make_ball<double>({0, 0}, 3), make_ball<double>({1, 0}, 2), kTol);
            }),
            ErrorKind::RatioNotGreaterThanOne);
}

TEST(HalfspaceSet, Validation) {
  EXPECT_EQ(kind_of([] { make_halfspace_set<double>({{{1, 0}, 0}, {{2, 0}, 0}}, kTol); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { make_halfspace_set<double>({{{1, 0}, 1}, {{-1, 0}, 0}}, kTol); }),
            ErrorKind::InfeasibleShape);
  EXPECT_EQ(kind_of([] { make_halfspace_set<Rational>({{{1, 0}, 1}, {{-1, 0}, 0}}, kTol); }),
            ErrorKind::InfeasibleShape);
  EXPECT_NO_THROW(make_halfspace_set<double>({{{1, 0}, 1}, {{-1, 0}, -1}}, kTol));  // the line x = 1
}

TEST(SizeMeasure, Examples) {
  EXPECT_EQ(size_measure<double>(make_ball<double>({0, 0}, 3), kTol), 3.0);
  EXPECT_DOUBLE_EQ(size_measure<Rational>(unit_square<Rational>(), kTol), std::sqrt(2.0));
  const Shape<double> half = make_halfspace_set<double>({{{0, 1}, 0}}, kTol);
  EXPECT_EQ(kind_of([&] { size_measure(half, kTol); }), ErrorKind::UnboundedShape);
  // a bounded triangle given by halfspaces: x >= 0, y >= 0, x + y <= 2
  const Shape<Rational> tri = make_halfspace_set<Rational>({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -2}}, kTol);
  EXPECT_EQ(size_squared(tri, kTol), 8);
}

TEST(ApplyHomothety, Examples) {
  const Shape<Rational> img = apply_homothety<Rational>(Homothety<Rational>({18, 0}, q(3, 2)), make_ball<Rational>({6, 0}, 2));
  const auto& b = std::get<Ball<Rational>>(img);
  EXPECT_EQ(b.center, (Point<Rational>{0, 0}));
  EXPECT_EQ(b.radius, 3);

  const Shape<Rational> c2 = corner_set<Rational>(q(1, 2), 2);
  const auto mapped = std::get<HalfspaceSet<Rational>>(apply_homothety<Rational>(Homothety<Rational>({0, -1}, q(4, 3)), c2));
  const auto expected = std::get<HalfspaceSet<Rational>>(Shape<Rational>(corner_set<Rational>(1, 3)));
  ASSERT_EQ(mapped.constraints.size(), expected.constraints.size());
  for (std::size_t k = 0; k < mapped.constraints.size(); ++k) {
    EXPECT_EQ(mapped.constraints[k].normal, expected.constraints[k].normal);
    EXPECT_EQ(mapped.constraints[k].offset, expected.constraints[k].offset);
  }

  EXPECT_EQ(kind_of([&] { apply_homothety<Rational>(Homothety<Rational>({0, 0}, -2), c2); }), ErrorKind::InvalidInput);
}

// Properties.

namespace {

std::mt19937_64 rng(31);

double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Point<double> random_point(std::size_t n, double r) {
  Point<double> p = Point<double>::zero(n);
  for (auto& c : p.coords) c = uni(-r, r);
  return p;
}

Shape<double> random_shape(int kind, std::size_t n) {
  if (kind == 0) return make_ball(random_point(n, 5), uni(0.5, 3));
  if (kind == 1) {
    std::vector<Point<double>> pts;
    const int m = 3 + static_cast<int>(rng() % 8);
    for (int k = 0; k < m; ++k) pts.push_back(random_point(n, 2));
    return make_vertex_set(std::move(pts));
  }
  // a box with a few extra cuts through its interior
  std::vector<Halfspace<double>> cons;
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<double> e(n, 0.0);
    e[d] = 1;
    cons.push_back({e, -1 - uni(0, 1)});
    e[d] = -1;
    cons.push_back({e, -1 - uni(0, 1)});
  }
  for (int k = 0; k < 2; ++k) {
    std::vector<double> nn(n);
    for (auto& v : nn) v = uni(-1, 1);
    cons.push_back({nn, -0.5});
  }
  return make_halfspace_set(cons, kTol);
}

}  // namespace

TEST(ShapesProperty, DetectRecoversAppliedHomothety) {
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const int kind = trial % 3;
    const Shape<double> c = random_shape(kind, n);
    const Point<double> center = random_point(n, 10);
    const double ratio = uni(1.05, 10.0);
    const Shape<double> image = apply_homothety(Homothety<double>(center, ratio), c);
    const auto h = detect_homothety(c, image, kTol);
    EXPECT_NEAR(h.ratio, ratio, 1e-9 * ratio);
    EXPECT_LE(distance(h.center, center), 1e-9 * std::max(1.0, norm(center))) << "kind " << kind;

    // inverse consistency: (b, 1/lambda) maps the image back onto c
    const Shape<double> back = apply_homothety(h.inverse(), image);
    if (kind != 2) {
      EXPECT_NEAR(size_measure(back, kTol), size_measure(c, kTol), 1e-9 * size_measure(c, kTol));
      // size homogeneity
      EXPECT_NEAR(size_measure(image, kTol), ratio * size_measure(c, kTol), 1e-12 * ratio * size_measure(c, kTol));
    }
    if (kind == 0) {
      const auto& b0 = std::get<Ball<double>>(c);
      const auto& b1 = std::get<Ball<double>>(image);
      // center lies on the line o0 o1, beyond the smaller ball (t outside [0, 1])
      const Point<double> d = b1.center - b0.center;
      const double t = dot(Point<double>(h.center - b0.center), d) / dot(d, d);
      EXPECT_TRUE(t < 0 || t > 1);
      EXPECT_LE(norm(Point<double>(h.center - b0.center - t * d)), 1e-9 * std::max(1.0, norm(h.center)));
    }
  }
}

TEST(ShapesProperty, ExactRoundtrip) {
  std::uniform_int_distribution<int> c(-8, 8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<Point<Rational>> pts;
    for (int k = 0; k < 5; ++k) {
      Point<Rational> p = Point<Rational>::zero(n);
      for (auto& x : p.coords) x = Rational(c(rng), 1 + k);
      pts.push_back(p);
    }
    const Shape<Rational> base = make_vertex_set(pts);
    if (squared_diameter<Rational>(std::get<VertexSet<Rational>>(base).vertices) == 0) continue;
    Point<Rational> center = Point<Rational>::zero(n);
    for (auto& x : center.coords) x = Rational(c(rng), 3);
    const Rational ratio(11 + trial, 7);
    const auto h = detect_homothety(base, apply_homothety(Homothety<Rational>(center, ratio), base), kTol);
    EXPECT_EQ(h.ratio, ratio);
    EXPECT_EQ(h.center, center);

    const int r = c(rng);
    const Shape<Rational> ball = make_ball<Rational>(center, Rational(r * r + 1, 2));
    const Point<Rational> c2 = center + Point<Rational>(std::vector<Rational>(n, Rational(1, 5)));
    const auto hb = detect_homothety(ball, apply_homothety(Homothety<Rational>(c2, ratio), ball), kTol);
    EXPECT_EQ(hb.ratio, ratio);
    EXPECT_EQ(hb.center, c2);
  }
}
