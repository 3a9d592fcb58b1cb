#include <numbers>

#include "support.hpp"

namespace ff = funkfinsler;
using ff::DiscChart;
using ff::Point2;
using ff::Tangent2;
using ff::TangentSample;

TEST(FunkDistance, Examples) {
  EXPECT_NEAR(ff::funk_distance(DiscChart(0, 1), {0, 0}, {0.5, 0}), std::log(2.0), 1e-15);
  EXPECT_NEAR(ff::funk_distance(DiscChart(1, 1), {0, 0}, {0.5, 0}), std::log(2.0) + 0.5 * std::log(1.25), 1e-15);
  EXPECT_NEAR(ff::funk_distance(DiscChart(-1, 1), {0, 0}, {0.5, 0}), std::log(2.0) + 0.5 * std::log(0.75), 1e-15);
  EXPECT_EQ(ff::funk_distance(DiscChart(1, 0.5), {0.1, 0.2}, {0.1, 0.2}), 0.0);
}

TEST(FunkDistance, IsNotSymmetric) {
  // Reverse direction: the ray from (0.5,0) through 0 exits at (-1,0), so the
  // ratio is 1.5 / 1.
  const DiscChart c(0, 1);
  EXPECT_NEAR(ff::funk_distance(c, {0.5, 0}, {0, 0}), std::log(1.5), 1e-12);
  EXPECT_NEAR(ff::integrate_F_along_segment(c, {0.5, 0}, {0, 0}, 64), std::log(1.5), 1e-12);
  EXPECT_NEAR(ff::funk_distance(c, {0, 0}, {0.5, 0}), std::log(2.0), 1e-12);
}

TEST(FunkDistance, DomainErrors) {
  EXPECT_THROW(ff::funk_distance(DiscChart(0, 1), {0, 0}, {1.2, 0}), ff::DomainError);
}

TEST(Quadrature, Examples) {
  EXPECT_NEAR(ff::integrate_F_along_segment(DiscChart(0, 1), {0, 0}, {0.5, 0}, 256), 0.6931471805599453, 1e-9);
  EXPECT_NEAR(ff::integrate_F_along_segment(DiscChart(1, 1), {0, 0}, {0.5, 0}, 256), 0.8047189562170501, 1e-8);
  EXPECT_EQ(ff::integrate_F_along_segment(DiscChart(-1, 1), {0.2, 0.1}, {0.2, 0.1}, 16), 0.0);
  EXPECT_NEAR(ff::integrate_F_along_segment(DiscChart(-1, 1), {0.2, 0.1}, {0.2 + 1e-9, 0.1}, 16), 0.0, 1e-8);
  EXPECT_THROW(ff::integrate_F_along_segment(DiscChart(0, 1), {0, 0}, {0.5, 0}, 8), std::invalid_argument);
}

TEST(SphericalChord, Examples) {
  EXPECT_NEAR(ff::spherical_chord_distance({0, 0}, {1, 0}), std::numbers::pi / 4, 1e-15);
  EXPECT_EQ(ff::spherical_chord_distance({0.3, 0.2}, {0.3, 0.2}), 0.0);
  ff::SampleStream rng(9);
  for (int i = 0; i < 200; ++i) {
    const Point2 x{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const Point2 y{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    EXPECT_EQ(ff::spherical_chord_distance(x, y), ff::spherical_chord_distance(y, x));
    const auto px = ff::hemisphere_point(x);
    const auto py = ff::hemisphere_point(y);
    const double c = px[0] * py[0] + px[1] * py[1] + px[2] * py[2];
    EXPECT_NEAR(ff::spherical_chord_distance(x, y), std::acos(std::clamp(c, -1.0, 1.0)), 1e-10);
  }
}

TEST(SphericalChord, PullbackIntegrandMatchesArctangentForm) {
  ff::SampleStream rng(10);
  for (int i = 0; i < 300; ++i) {
    const Point2 x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Tangent2 xi = rng.direction();
    const double p = ff::dot(x, xi);
    const double k = std::sqrt(1 + ff::norm_sq(x) - p * p);
    const double t = rng.uniform(-2, 2);
    EXPECT_NEAR(ff::spherical_speed(x + t * xi, xi), k / (k * k + (t + p) * (t + p)), 1e-12);
  }
}

TEST(BusemannMayer, Examples) {
  EXPECT_NEAR(ff::busemann_mayer_estimate(DiscChart(0, 1), {{0.5, 0}, {1, 0}}, 1e-5), 2.0, 1e-4);
  EXPECT_NEAR(ff::busemann_mayer_estimate(DiscChart(1, 1), {{0, 0}, {1, 0}}, 1e-5), 1.0, 1e-4);
  EXPECT_THROW(ff::busemann_mayer_estimate(DiscChart(0, 1), {{0.5, 0}, {1, 0}}, 0.0), std::invalid_argument);
  EXPECT_THROW(ff::busemann_mayer_estimate(DiscChart(0, 1), {{0.5, 0}, {1, 0}}, 0.6), ff::DomainError);
}

TEST(GeodesicPoint, Examples) {
  const DiscChart c(0, 1);
  const TangentSample s{{0, 0}, {1, 0}};
  const Point2 z = ff::geodesic_point(c, s, 0.0);
  EXPECT_EQ(z.x1, 0.0);
  const Point2 y = ff::geodesic_point(c, s, std::log(2.0));
  EXPECT_NEAR(y.x1, 0.5, 1e-12);
  EXPECT_NEAR(y.x2, 0.0, 1e-15);
  EXPECT_THROW(ff::geodesic_point(c, s, -1.0), std::invalid_argument);
  EXPECT_THROW(ff::geodesic_point(c, {{0, 0}, {0, 0}}, 1.0), ff::DegenerateDirection);
}

TEST(Segment, EndpointsAndExitAreCollinear) {
  const DiscChart c(1, 0.8);
  const auto seg = ff::geodesic_segment(c, {0.1, -0.3}, {0.4, 0.2});
  EXPECT_NEAR(ff::norm(seg.boundary_point), 0.8, 1e-12);
  const Tangent2 u = seg.end - seg.start;
  const Tangent2 v = seg.boundary_point - seg.start;
  EXPECT_NEAR(u.xi1 * v.xi2 - u.xi2 * v.xi1, 0.0, 1e-10);
}

class DistanceProps : public testing::TestWithParam<ff::test::ChartCase> {
 protected:
  DiscChart chart{GetParam().eps, GetParam().r};
};

TEST_P(DistanceProps, QuadratureMatchesClosedForm) {
  ff::SampleStream rng(201);
  for (int i = 0; i < 200; ++i) {
    const Point2 x = rng.point(chart);
    const Point2 y = rng.point(chart);
    EXPECT_NEAR(ff::integrate_F_along_segment(chart, x, y, 512), ff::funk_distance(chart, x, y), 1e-8);
  }
}

TEST_P(DistanceProps, TriangleInequalityAndCollinearEquality) {
  ff::SampleStream rng(202);
  for (int i = 0; i < 1000; ++i) {
    const Point2 x = rng.point(chart), y = rng.point(chart), z = rng.point(chart);
    EXPECT_LE(ff::funk_distance(chart, x, z),
              ff::funk_distance(chart, x, y) + ff::funk_distance(chart, y, z) + 1e-10);
    const Point2 m = x + 0.37 * (z - x);
    EXPECT_NEAR(ff::funk_distance(chart, x, z), ff::funk_distance(chart, x, m) + ff::funk_distance(chart, m, z),
                1e-10 * std::max(1.0, ff::funk_distance(chart, x, z)));
  }
}

TEST_P(DistanceProps, BusemannMayerConvergesLinearly) {
  int checked = 0;
  for (const auto& s : ff::test::draw(chart, 203, 50)) {
    const double f = ff::eval_F(chart, s);
    const double t = 1e-3 * chart.r();
    const double e1 = std::abs(ff::busemann_mayer_estimate(chart, s, t) - f);
    const double e2 = std::abs(ff::busemann_mayer_estimate(chart, s, t / 2) - f);
    if (e1 < 1e-11 * f) continue;  // no measurable first-order term in this direction
    EXPECT_GE(e1 / e2, 1.8);
    EXPECT_LE(e1 / e2, 2.2);
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST_P(DistanceProps, GeodesicPointRoundTrip) {
  ff::SampleStream rng(204);
  for (const auto& s : ff::test::draw(chart, 205, 300)) {
    const double arc = rng.uniform(0.0, 3.0);
    const Point2 y = ff::geodesic_point(chart, s, arc);
    EXPECT_NEAR(ff::funk_distance(chart, s.base, y), arc, 1e-10);
    const Tangent2 d = y - s.base;
    EXPECT_NEAR(d.xi1 * s.dir.xi2 - d.xi2 * s.dir.xi1, 0.0, 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Charts, DistanceProps, testing::ValuesIn(ff::test::kCharts), ff::test::chart_name);

TEST(SineRatio, SphericalDistanceChain) {
  for (double r : {1.0, 0.6}) {
    const DiscChart c(1, r);
    ff::SampleStream rng(206);
    for (int i = 0; i < 100; ++i) {
      const Point2 x = rng.point(c), y = rng.point(c);
      const Point2 a = ff::ray_boundary_intersection(c, x, y - x);
      const double lhs =
          std::log(std::sin(ff::spherical_chord_distance(x, a)) / std::sin(ff::spherical_chord_distance(y, a)));
      EXPECT_NEAR(lhs, ff::funk_distance(c, x, y), 1e-9);
    }
  }
}
