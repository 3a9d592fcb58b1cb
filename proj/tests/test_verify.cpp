#include <set>

#include "support.hpp"

namespace ff = funkfinsler;
using ff::DiscChart;

namespace {

// Checks that fail on purpose, keyed by chart: the spherical lower bound for S
// has inward counterexamples, and at eps = -1, r = 1 beta vanishes so the
// metric is Berwald.
std::set<std::string> expected_failures(int eps, double r) {
  if (eps > 0) return {"curvature.S − (3/2)F > 0"};
  if (eps < 0 && r == 1.0) return {"classify.non_berwald"};
  return {};
}

}  // namespace

class VerifyProps : public testing::TestWithParam<ff::test::ChartCase> {};

TEST_P(VerifyProps, OnlyDocumentedChecksFail) {
  const DiscChart chart(GetParam().eps, GetParam().r);
  auto rep = ff::run_verification(chart, 7);
  rep.sort();
  EXPECT_GT(rep.records.size(), 50u);
  std::set<std::string> failed;
  for (const auto& c : rep.records) {
    if (!c.pass) failed.insert(c.name);
    EXPECT_GT(c.samples, 0u) << c.name;
  }
  EXPECT_EQ(failed, expected_failures(chart.eps(), chart.r()));
  EXPECT_EQ(rep.pass(), failed.empty());
  EXPECT_EQ(rep.generator, "mt19937_64");
  EXPECT_EQ(rep.version, ff::kVersion);
}

INSTANTIATE_TEST_SUITE_P(Charts, VerifyProps,
                         testing::Values(ff::test::ChartCase{0, 1.0}, ff::test::ChartCase{-1, 0.9},
                                         ff::test::ChartCase{1, 1.0}, ff::test::ChartCase{-1, 1.0},
                                         ff::test::ChartCase{1, 0.5}),
                         ff::test::chart_name);

TEST(Verify, SignChecksAreNamedPerModel) {
  auto e = ff::run_verification(DiscChart(0, 1), 7);
  EXPECT_NE(e.find("curvature.K ≡ −1/4"), nullptr);
  EXPECT_NE(e.find("curvature.S ≡ (3/2)F"), nullptr);
  auto h = ff::run_verification(DiscChart(-1, 0.9), 7);
  const auto* k = h.find("curvature.K + 1/4 < 0");
  ASSERT_NE(k, nullptr);
  EXPECT_TRUE(k->strict);
  EXPECT_TRUE(k->pass);
  EXPECT_LT(k->max_violation, 0.0);
  auto s = ff::run_verification(DiscChart(1, 1), 7);
  EXPECT_TRUE(s.find("curvature.K + 1/4 > 0")->pass);
  EXPECT_FALSE(s.find("curvature.S − (3/2)F > 0")->pass);
  EXPECT_NE(s.find("distance.sine_ratio_identity"), nullptr);
}

TEST(Verify, DeterministicForAFixedSeed) {
  const DiscChart c(-1, 0.5);
  auto a = ff::run_verification(c, 99);
  auto b = ff::run_verification(c, 99);
  a.sort();
  b.sort();
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].name, b.records[i].name);
    EXPECT_EQ(a.records[i].max_violation, b.records[i].max_violation) << a.records[i].name;
  }
}

TEST(Report, RecordSemantics) {
  EXPECT_TRUE(ff::make_record("a", 1, 1e-9, 1e-9).pass);
  EXPECT_FALSE(ff::make_record("a", 1, 0.0, 0.0, true).pass);
  EXPECT_TRUE(ff::make_record("a", 1, -1e-3, 0.0, true).pass);
  ff::VerificationReport r;
  r.records = {ff::make_record("z", 1, 0, 1), ff::make_record("b", 1, 2, 1)};
  r.sort();
  EXPECT_EQ(r.records.front().name, "b");
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.find("missing"), nullptr);
}
