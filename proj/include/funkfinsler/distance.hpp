#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "funkfinsler/errors.hpp"
#include "funkfinsler/geometry.hpp"
#include "funkfinsler/metric.hpp"

namespace funkfinsler {

struct GeodesicSegment {
  Point2 start;
  Point2 end;
  Point2 boundary_point;  // where the ray start -> end leaves the disc
};

inline GeodesicSegment geodesic_segment(const DiscChart& chart, const Point2& x, const Point2& y) {
  require_interior(chart, x);
  require_interior(chart, y);
  return {x, y, ray_boundary_intersection(chart, x, y - x)};
}

/// Funk distance d(x, y) = log(|x - a| / |y - a|) + 1/2 log((1 + eps|y|^2) / (1 + eps|x|^2)),
/// a the exit point of the ray from x through y. Zero when x == y.
///
/// With a = x + t*(y - x) the ratio |x - a| / |y - a| is t* / (t* - 1).
inline double funk_distance(const DiscChart& chart, const Point2& x, const Point2& y) {
  require_interior(chart, x);
  require_interior(chart, y);
  if (x.x1 == y.x1 && x.x2 == y.x2) return 0.0;
  const double t = ray_exit_parameter(chart, x, y - x);
  const double eps = chart.epsilon();
  return -std::log1p(-1.0 / t) + 0.5 * (std::log1p(eps * norm_sq(y)) - std::log1p(eps * norm_sq(x)));
}

/// Composite 5-point Gauss-Legendre quadrature of t -> F(x + t(y - x), y - x)
/// over [0, 1] with n_steps panels.
inline double integrate_F_along_segment(const DiscChart& chart, const Point2& x, const Point2& y, int n_steps) {
  if (n_steps < 16) throw std::invalid_argument("integrate_F_along_segment needs n_steps >= 16");
  require_interior(chart, x);
  require_interior(chart, y);
  const Tangent2 v = y - x;
  if (v.xi1 == 0.0 && v.xi2 == 0.0) return 0.0;

  static constexpr std::array<double, 5> nodes{0.0, -0.5384693101056831, 0.5384693101056831,
                                               -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> weights{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                 0.2369268850561891, 0.2369268850561891};
  const double h = 1.0 / n_steps;
  double total = 0.0;
  for (int k = 0; k < n_steps; ++k) {
    const double mid = (k + 0.5) * h;
    double panel = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double t = mid + 0.5 * h * nodes[q];
      panel += weights[q] * eval_F(chart, TangentSample{x + t * v, v});
    }
    total += 0.5 * h * panel;
  }
  return total;
}

/// Image of a chart point on the upper hemisphere: (x, 1) / sqrt(1 + |x|^2).
inline std::array<double, 3> hemisphere_point(const Point2& x) {
  const double s = 1.0 / std::sqrt(1.0 + norm_sq(x));
  return {x.x1 * s, x.x2 * s, s};
}

/// Great-circle distance between the hemisphere images of x and y.
///
/// Along gamma(t) = x + t xi with xi the Euclidean unit vector towards y,
/// the pulled-back spherical speed is k / (k^2 + (t + <x,xi>)^2) with
/// k^2 = 1 + |x|^2 - <x,xi>^2, which integrates to an arctangent. atan2
/// keeps the result valid past pi/2.
inline double spherical_chord_distance(const Point2& x, const Point2& y) {
  // Fixed argument order so the result is exactly symmetric.
  if (std::tie(y.x1, y.x2) < std::tie(x.x1, x.x2)) return spherical_chord_distance(y, x);
  const Tangent2 v = y - x;
  const double len = norm(v);
  if (len == 0.0) return 0.0;
  const Tangent2 xi = (1.0 / len) * v;
  const double p = dot(x, xi);
  const double k = std::sqrt(std::max(0.0, 1.0 + norm_sq(x) - p * p));
  return std::atan2(len * k, k * k + p * (len + p));
}

/// Speed of t -> x + t xi in the pulled-back spherical metric,
/// sqrt((1 + |x|^2)|xi|^2 - <x,xi>^2) / (1 + |x|^2).
inline double spherical_speed(const Point2& x, const Tangent2& xi) {
  const double q = 1.0 + norm_sq(x);
  const double p = dot(x, xi);
  return std::sqrt(q * norm_sq(xi) - p * p) / q;
}

/// d(x, x + t xi) / t, which tends to F(x, xi) as t -> 0.
inline double busemann_mayer_estimate(const DiscChart& chart, const TangentSample& s, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("busemann_mayer_estimate needs t > 0");
  require_valid(chart, s);
  const Point2 y = s.base + t * s.dir;
  require_interior(chart, y);
  return funk_distance(chart, s.base, y) / t;
}

/// The point on the ray x + t xi (t >= 0) at Funk distance `arc` from x.
///
/// d(x, x + t xi) increases from 0 to infinity on [0, t*), with derivative
/// F(x + t xi, xi). Bisection keeps a bracket; Newton steps are taken when
/// they land inside it.
inline Point2 geodesic_point(const DiscChart& chart, const TangentSample& s, double arc) {
  if (arc < 0.0) throw std::invalid_argument("geodesic_point needs arc >= 0");
  require_valid(chart, s);
  if (arc == 0.0) return s.base;

  // d cannot be evaluated past the guard radius, so bracket with its exit.
  double lo = 0.0;
  double hi = ray_circle_parameter(s.base, s.dir, chart.guard_radius() * (1.0 - 1e-12));
  auto dist = [&](double t) { return funk_distance(chart, s.base, s.base + t * s.dir); };
  if (dist(hi) < arc) throw DomainError("geodesic_point: arc length not reachable inside the guarded disc");

  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = dist(t) - arc;
    if (std::abs(f) <= 1e-15 * std::max(1.0, arc)) break;
    if (f > 0.0)
      hi = t;
    else
      lo = t;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) break;
    const double slope = eval_F(chart, TangentSample{s.base + t * s.dir, s.dir});
    const double newton = t - f / slope;
    t = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
  }
  return s.base + t * s.dir;
}

}  // namespace funkfinsler
