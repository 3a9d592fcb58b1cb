#include <atomic>

#include "support.hpp"

namespace ff = funkfinsler;
using ff::DiscChart;
using ff::Differentiation;
using ff::Mat2;
using ff::Point2;
using ff::Tangent2;
using ff::TangentSample;

namespace {

// |xi|, independent of the base point.
const auto euclidean = [](const auto& s) {
  using std::sqrt;
  return sqrt(s.dir.xi1 * s.dir.xi1 + s.dir.xi2 * s.dir.xi2);
};

// Not homogeneous: |xi|^2.
const auto quadratic = [](const auto& s) { return s.dir.xi1 * s.dir.xi1 + s.dir.xi2 * s.dir.xi2; };

}  // namespace

TEST(OracleG, EuclideanNorm) {
  for (auto mode : {Differentiation::dual, Differentiation::central}) {
    const auto g = ff::oracle_g(euclidean, TangentSample{{0.1, 0.2}, {0.3, -1.7}}, mode);
    EXPECT_TRUE(g.positive_definite);
    EXPECT_LE(ff::max_abs_diff(g.g, Mat2<double>::identity()), mode == Differentiation::dual ? 1e-14 : 1e-7);
  }
}

TEST(OracleG, MatchesMetricEngine) {
  const DiscChart c(0, 1);
  const TangentSample s{{0.5, 0}, {1, 0}};
  const auto ref = ff::fundamental_tensor(c, s).g;
  for (auto mode : {Differentiation::dual, Differentiation::central}) {
    const auto g = ff::oracle_g(ff::metric_fn(c), s, mode).g;
    EXPECT_LE(ff::max_abs_diff(g, ref), 1e-6);
    EXPECT_LE(std::abs(g(0, 1) - g(1, 0)), 1e-8);
  }
  const auto g2 = ff::oracle_g(ff::metric_fn(c), TangentSample{s.base, {2, 0}}).g;
  EXPECT_LE(ff::max_abs_diff(g2, ref), 1e-6);
}

TEST(OracleG, RejectsNonHomogeneousFunctions) {
  EXPECT_THROW(ff::oracle_g(quadratic, TangentSample{{0, 0}, {1, 1}}), ff::NotHomogeneous);
}

TEST(OracleSpray, Examples) {
  const TangentSample s{{0.2, -0.3}, {0.5, 0.9}};
  for (auto mode : {Differentiation::dual, Differentiation::central}) {
    const auto g = ff::oracle_spray(euclidean, s, mode).G;
    EXPECT_NEAR(g[0], 0.0, 1e-7);
    EXPECT_NEAR(g[1], 0.0, 1e-7);
  }
  const DiscChart c(0, 1);
  const double f = ff::eval_F(c, s);
  const auto g = ff::oracle_spray(ff::metric_fn(c), s);
  EXPECT_FALSE(g.ill_conditioned);
  EXPECT_LE(std::abs(g.G[0] - 0.5 * f * s.dir.xi1), 1e-6 * f);
  EXPECT_LE(std::abs(g.G[1] - 0.5 * f * s.dir.xi2), 1e-6 * f);

  const auto a = ff::alpha_fn(DiscChart(1, 1));
  const auto g1 = ff::oracle_spray(a, s).G;
  const auto g2 = ff::oracle_spray(a, TangentSample{s.base, 2.0 * s.dir}).G;
  EXPECT_LE(ff::max_abs_diff(g2, {4 * g1[0], 4 * g1[1]}), 1e-6 * ff::max_abs(g2));
}

TEST(OracleRiemann, Examples) {
  const TangentSample s{{0.25, -0.35}, {0.8, 0.1}};
  for (int eps : {-1, 0, 1}) {
    EXPECT_NEAR(ff::oracle_flag(ff::alpha_fn(DiscChart(eps, 0.9)), s).K, -1.0, 1e-5);
  }
  const DiscChart c0(0, 1);
  EXPECT_NEAR(ff::oracle_flag(ff::metric_fn(c0), s).K, -0.25, 1e-5);
  const auto R = ff::oracle_riemann(ff::metric_fn(c0), s);
  const double f = ff::eval_F(c0, s);
  EXPECT_NEAR(R(0, 0) + R(1, 1), -0.25 * f * f, 1e-6);
}

TEST(OracleS, Examples) {
  const DiscChart c(0, 1);
  const TangentSample s{{0.5, 0}, {1, 0}};
  EXPECT_NEAR(ff::oracle_s_curvature(ff::metric_fn(c), c, s), 3.0, 1e-6);
  EXPECT_NEAR(ff::oracle_s_curvature(ff::metric_fn(c), s), 3.0, 1e-6);
  const TangentSample t{{0.2, 0.4}, {-0.3, 0.7}};
  EXPECT_NEAR(ff::oracle_s_curvature(ff::alpha_fn(DiscChart(1, 1)), t), 0.0, 1e-6);
  const DiscChart h(-1, 0.9);
  const double s1 = ff::oracle_s_curvature(ff::metric_fn(h), h, t);
  const double s2 = ff::oracle_s_curvature(ff::metric_fn(h), h, TangentSample{t.base, 2.0 * t.dir});
  EXPECT_NEAR(s2, 2 * s1, 1e-6 * std::max(1.0, std::abs(s2)));
}

TEST(OracleFlag, Examples) {
  const TangentSample s{{0.1, 0.3}, {-0.4, 0.2}};
  EXPECT_NEAR(ff::oracle_flag(ff::metric_fn(DiscChart(0, 1)), s).K, -0.25, 1e-4);
  EXPECT_NEAR(ff::oracle_flag(ff::alpha_fn(DiscChart(0, 1)), s).K, -1.0, 1e-4);
  const auto fn = ff::metric_fn(DiscChart(1, 1));
  const double k1 = ff::oracle_flag(fn, s).K;
  EXPECT_NEAR(ff::oracle_flag(fn, TangentSample{s.base, 3.0 * s.dir}).K, k1, 1e-4);
  EXPECT_NEAR(ff::oracle_flag(fn, s, Tangent2{1.0, 0.25}).K, k1, 1e-4);
  EXPECT_THROW(ff::oracle_flag(fn, s, Tangent2{-0.8, 0.4}), ff::DegenerateFlag);
}

TEST(BhQuadrature, MatchesClosedDensity) {
  for (const auto& c : ff::test::kCharts) {
    const DiscChart chart(c.eps, c.r);
    for (const auto& s : ff::test::draw(chart, 61, 50))
      EXPECT_LE(ff::test::rel(ff::bh_density_quadrature(ff::metric_fn(chart), s.base), ff::bh_density(chart, s.base)),
                1e-6);
  }
}

class OracleProps : public testing::TestWithParam<ff::test::ChartCase> {
 protected:
  DiscChart chart{GetParam().eps, GetParam().r};
};

TEST_P(OracleProps, ClosedFormsAgreeWithGenericPipeline) {
  const auto fn = ff::metric_fn(chart);
  for (const auto& s : ff::test::draw(chart, 62, 100)) {
    const auto rep = ff::riemann(chart, s);
    const auto g = ff::oracle_spray(fn, s).G;
    EXPECT_LE(ff::max_abs_diff(g, rep.G), 1e-5 * ff::max_abs(rep.G));
    const double so = ff::oracle_s_curvature(fn, chart, s);
    EXPECT_LE(std::abs(so - rep.S), 1e-6 * std::max(std::abs(rep.S), rep.F));
    const auto R = ff::oracle_riemann(fn, s);
    EXPECT_LE(ff::max_abs_diff(R, rep.R), 1e-4 * ff::max_abs(rep.R));
    EXPECT_LE(std::abs(ff::oracle_flag(fn, s).K - rep.K), 1e-4 * std::max(1.0, std::abs(rep.K)));
  }
}

TEST_P(OracleProps, CentralDifferencePaths) {
  const auto fn = ff::metric_fn(chart);
  for (const auto& s : ff::test::draw(chart, 63, 50)) {
    const auto ref = ff::fundamental_tensor(chart, s).g;
    const auto g = ff::oracle_g(fn, s, Differentiation::central);
    EXPECT_LE(ff::max_abs_diff(g.g, ref), 1e-6 * ff::max_abs(ref));
    const auto R = ff::riemann_from_spray(ff::spray_fn(chart), s, Differentiation::central, chart.r() - ff::norm(s.base));
    const auto Rc = ff::riemann(chart, s).R;
    EXPECT_LE(ff::max_abs_diff(R, Rc), 1e-4 * ff::max_abs(Rc));
  }
}

TEST_P(OracleProps, GeodesicsAreStraight) {
  const double r = chart.r();
  for (const auto& s : ff::test::draw(chart, 64, 50)) {
    const TangentSample start{(0.5 / 0.95) * s.base, s.dir};
    try {
      const auto path = ff::integrate_geodesic_ode(ff::spray_fn(chart), chart, start, 0.4 * r, 400, 0.9 * r);
      EXPECT_LE(ff::max_transverse_deviation(path, start.base, start.dir), 1e-6 * r);
    } catch (const ff::BoundaryExit& e) {
      ASSERT_FALSE(e.path.x.empty());
      EXPECT_LE(ff::max_transverse_deviation(e.path, start.base, start.dir), 1e-6 * r);
      for (const Point2& p : e.path.x) EXPECT_LE(ff::norm(p), 0.9 * r);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Charts, OracleProps, testing::ValuesIn(ff::test::kCharts), ff::test::chart_name);

TEST(GeodesicOde, Examples) {
  const DiscChart c0(0, 1);
  const auto axis = ff::integrate_geodesic_ode(ff::spray_fn(c0), c0, {{0, 0}, {1, 0}}, 0.5, 200);
  for (const Point2& p : axis.x) EXPECT_LE(std::abs(p.x2), 1e-9);

  const DiscChart c1(1, 1);
  const TangentSample s{{0.2, 0.1}, {1, 0.5}};
  const auto path = ff::integrate_geodesic_ode(ff::spray_fn(c1), c1, s, 0.05, 100);
  EXPECT_LE(ff::max_transverse_deviation(path, s.base, s.dir), 1e-6);

  // Outward motion reaches the stop radius in finite time.
  EXPECT_THROW(ff::integrate_geodesic_ode(ff::spray_fn(c0), c0, {{0.5, 0}, {1, 0}}, 10.0, 1000, 0.9), ff::BoundaryExit);
}

TEST(Parallel, ForwardsTheFirstException) {
  std::atomic<int> seen{0};
  EXPECT_THROW(ff::parallel_for(
                   64,
                   [&](std::size_t i) {
                     ++seen;
                     if (i == 17) throw std::runtime_error("boom");
                   },
                   4),
               std::runtime_error);
  std::vector<int> out(100, 0);
  ff::parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i); }, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(out[i], i);
}
