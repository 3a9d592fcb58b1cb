#pragma once

// Zermelo navigation data (h, W) of the Randers metric and its inverse.
//
// Forward map: c = 1 - ||beta||^2, h_ij = c (a_ij - b_i b_j), W^i = -b^i / c.
// With this sign F(x, xi) solves h(xi - F W, xi - F W) = F^2, i.e. the
// unit-speed boat drifts with the wind W.

#include <cmath>
#include <string>

#include "funkfinsler/errors.hpp"
#include "funkfinsler/geometry.hpp"
#include "funkfinsler/metric.hpp"
#include "funkfinsler/tensor.hpp"

namespace funkfinsler {

struct ZermeloData {
  Mat2<double> h;
  Vec2<double> W;
  double c;

  double wind_norm_sq() const { return bilinear(h, W, W); }
};

/// Closed forms:
/// h = (1 - eps^2 r^2 q) / (r^2 u^4) [u^2 delta - eps (2 + eps r^2 + eps q) x x^T],
/// W = -(w u / (1 - eps^2 r^2 q)) x.
inline ZermeloData to_zermelo(const DiscChart& chart, const Point2& x) {
  require_interior(chart, x);
  const double eps = chart.epsilon();
  const double r2 = chart.r_sq();
  const double q = norm_sq(x);
  const double u = 1.0 + eps * q;
  const double w = 1.0 + eps * r2;
  const double m = 1.0 - eps * eps * r2 * q;
  const double k = m / (r2 * u * u * u * u);
  const double t = eps * (2.0 + eps * r2 + eps * q);
  const Vec2<double> xv{x.x1, x.x2};
  ZermeloData z;
  z.h = k * ((u * u) * Mat2<double>::identity() - t * outer(xv, xv));
  const double s = -w * u / m;
  z.W = {s * x.x1, s * x.x2};
  z.c = 1.0 - beta_norm_sq(chart, x);
  return z;
}

/// The same data straight from the defining relations, using a_ij, a^ij and b_i.
inline ZermeloData to_zermelo_generic(const DiscChart& chart, const Point2& x) {
  const Mat2<double> a = alpha_tensor(chart, x);
  const Mat2<double> a_inv = alpha_tensor_inverse(chart, x);
  const Vec2<double> b = one_form(chart, x);
  const Vec2<double> b_up = a_inv * b;
  const double c = 1.0 - (b[0] * b_up[0] + b[1] * b_up[1]);
  ZermeloData z;
  z.c = c;
  z.h = c * (a - outer(b, b));
  z.W = {-b_up[0] / c, -b_up[1] / c};
  return z;
}

struct RandersData {
  Mat2<double> a;
  Vec2<double> b;
};

/// Inverse map: lambda = 1 - ||W||_h^2, What = h W,
/// a = (h + What What^T / lambda) / lambda, b = -What / lambda.
inline RandersData from_zermelo(const ZermeloData& z) {
  const double n2 = z.wind_norm_sq();
  if (!(n2 < 1.0)) throw WindTooStrong("wind too strong: ||W||_h = " + std::to_string(std::sqrt(n2)) + " >= 1");
  const double lambda = 1.0 - n2;
  const Vec2<double> wh = z.h * z.W;
  RandersData out;
  out.a = (1.0 / lambda) * (z.h + (1.0 / lambda) * outer(wh, wh));
  out.b = {-wh[0] / lambda, -wh[1] / lambda};
  return out;
}

/// Navigation metric F = (sqrt(lambda h(xi,xi) + h(W,xi)^2) - h(W,xi)) / lambda.
inline double navigation_metric(const ZermeloData& z, const Tangent2& xi) {
  const double lambda = 1.0 - z.wind_norm_sq();
  if (!(lambda > 0.0)) throw WindTooStrong("wind too strong for the navigation metric");
  const Vec2<double> v{xi.xi1, xi.xi2};
  const double hw = bilinear(z.h, z.W, v);
  return (std::sqrt(lambda * bilinear(z.h, v, v) + hw * hw) - hw) / lambda;
}

}  // namespace funkfinsler
