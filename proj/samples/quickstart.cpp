// Evaluate the Funk metric of a spherical disc at one tangent vector and
// compare a few closed forms with the generic oracle.

#include <cstdio>

#include "funkfinsler/funkfinsler.hpp"

namespace ff = funkfinsler;

int main() {
  const ff::DiscChart chart(1, 1.0);
  const ff::TangentSample s{{0.3, -0.2}, {0.7, 0.4}};

  const ff::MetricEval m = ff::evaluate_metric(chart, s);
  std::printf("F = %.12f  (alpha %.12f + beta %.12f)\n", m.F, m.alpha, m.beta);

  const ff::CurvatureReport c = ff::riemann(chart, s);
  std::printf("S = %.12f   S - 3F/2 = %.3e\n", c.S, c.s_gap);
  std::printf("K = %.12f   K + 1/4  = %.3e\n", c.K, c.k_gap);

  const auto fn = ff::metric_fn(chart);
  std::printf("oracle K = %.12f\n", ff::oracle_flag(fn, s).K);

  const ff::Point2 y{0.5, 0.1};
  std::printf("d(x, y) = %.12f   d(y, x) = %.12f\n", ff::funk_distance(chart, s.base, y),
              ff::funk_distance(chart, y, s.base));

  const ff::ZermeloData z = ff::to_zermelo(chart, s.base);
  std::printf("wind W = (%.6f, %.6f), |W|_h^2 = %.6f\n", z.W[0], z.W[1], z.wind_norm_sq());
  return 0;
}
