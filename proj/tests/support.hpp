#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "funkfinsler/funkfinsler.hpp"

namespace funkfinsler::test {

struct ChartCase {
  int eps;
  double r;
};

// One chart per curvature sign at the unit radius and one at a smaller (or,
// for eps = 0, larger) radius. eps = -1, r = 1 is left out because beta
// vanishes identically there; it has its own tests.
inline const std::vector<ChartCase> kCharts{{0, 1.0}, {-1, 0.9}, {1, 1.0}, {0, 2.5}, {-1, 0.5}, {1, 0.5}};

inline std::string chart_name(const testing::TestParamInfo<ChartCase>& info) {
  const int eps = info.param.eps;
  std::string s = eps < 0 ? "hyperbolic" : eps > 0 ? "spherical" : "euclidean";
  s += "_r" + std::to_string(static_cast<int>(std::lround(info.param.r * 100)));
  return s;
}

inline std::vector<TangentSample> draw(const DiscChart& chart, std::uint64_t seed, int n) {
  SampleStream rng(seed);
  std::vector<TangentSample> out;
  for (int i = 0; i < n; ++i) out.push_back(rng.sample(chart));
  return out;
}

inline double rel(double a, double b, double floor = 1e-300) {
  return std::abs(a - b) / std::max(std::abs(b), floor);
}

}  // namespace funkfinsler::test
