#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "funkfinsler/geometry.hpp"

namespace funkfinsler {

/// Seeded sample source shared by the verification suites.
///
/// Points are uniform in |x|^2 over |x| <= fraction * r (so uniform in area)
/// with uniform angle; directions are uniform on the unit circle. Doubles
/// are built from the top 53 bits of the generator output, so a stream is
/// reproducible on every standard library.
class SampleStream {
 public:
  static constexpr std::string_view kGenerator = "mt19937_64";
  static constexpr double kDefaultFraction = 0.95;

  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Point2 point(const DiscChart& chart, double fraction = kDefaultFraction) {
    const double rho = fraction * chart.r() * std::sqrt(uniform());
    const double theta = 2.0 * std::numbers::pi * uniform();
    return {rho * std::cos(theta), rho * std::sin(theta)};
  }

  Tangent2 direction() {
    const double theta = 2.0 * std::numbers::pi * uniform();
    return {std::cos(theta), std::sin(theta)};
  }

  TangentSample sample(const DiscChart& chart, double fraction = kDefaultFraction) {
    const Point2 x = point(chart, fraction);
    return {x, direction()};
  }

 private:
  std::mt19937_64 engine_;
};

/// Independent stream seed for sub-check k of a run seeded with `seed`
/// (one splitmix64 step), so checks do not share draws.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Polar grid of base points: radii fraction * r * i / (n_radial - 1)
/// (origin included) times n_angular angles.
inline std::vector<Point2> polar_grid(const DiscChart& chart, int n_radial, int n_angular,
                                      double fraction = SampleStream::kDefaultFraction) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n_radial) * n_angular);
  for (int i = 0; i < n_radial; ++i) {
    const double rho = n_radial > 1 ? fraction * chart.r() * i / (n_radial - 1) : 0.0;
    for (int j = 0; j < n_angular; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / n_angular;
      pts.push_back({rho * std::cos(theta), rho * std::sin(theta)});
    }
  }
  return pts;
}

/// n unit directions at angles 2 pi k / n.
inline std::vector<Tangent2> circle_directions(int n) {
  std::vector<Tangent2> dirs;
  dirs.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    dirs.push_back({std::cos(theta), std::sin(theta)});
  }
  return dirs;
}

}  // namespace funkfinsler
