#pragma once

#include <cmath>
#include <string>
#include <type_traits>

#include "funkfinsler/dual.hpp"
#include "funkfinsler/errors.hpp"

namespace funkfinsler {

template <class T>
struct BasicPoint2 {
  T x1{};
  T x2{};

  constexpr T& operator[](int i) { return i == 0 ? x1 : x2; }
  constexpr const T& operator[](int i) const { return i == 0 ? x1 : x2; }
};

template <class T>
struct BasicTangent2 {
  T xi1{};
  T xi2{};

  constexpr T& operator[](int i) { return i == 0 ? xi1 : xi2; }
  constexpr const T& operator[](int i) const { return i == 0 ? xi1 : xi2; }
};

// A point of TM_0: base point plus tangent direction. Components are
// addressed 0..3 as (x1, x2, xi1, xi2) by the differentiation helpers.
template <class T>
struct BasicTangentSample {
  BasicPoint2<T> base;
  BasicTangent2<T> dir;

  constexpr T& operator[](int i) { return i < 2 ? base[i] : dir[i - 2]; }
  constexpr const T& operator[](int i) const { return i < 2 ? base[i] : dir[i - 2]; }
};

using Point2 = BasicPoint2<double>;
using Tangent2 = BasicTangent2<double>;
using TangentSample = BasicTangentSample<double>;

template <class T>
constexpr BasicPoint2<T> operator+(const BasicPoint2<T>& p, const BasicTangent2<T>& v) {
  return {p.x1 + v.xi1, p.x2 + v.xi2};
}

template <class T>
constexpr BasicTangent2<T> operator-(const BasicPoint2<T>& p, const BasicPoint2<T>& q) {
  return {p.x1 - q.x1, p.x2 - q.x2};
}

template <class T>
constexpr BasicTangent2<T> operator+(const BasicTangent2<T>& u, const BasicTangent2<T>& v) {
  return {u.xi1 + v.xi1, u.xi2 + v.xi2};
}

template <class T>
constexpr BasicTangent2<T> operator-(const BasicTangent2<T>& u, const BasicTangent2<T>& v) {
  return {u.xi1 - v.xi1, u.xi2 - v.xi2};
}

template <class T>
constexpr BasicTangent2<T> operator-(const BasicTangent2<T>& v) {
  return {-v.xi1, -v.xi2};
}

template <class T>
constexpr BasicTangent2<T> operator*(const std::type_identity_t<T>& s, const BasicTangent2<T>& v) {
  return {s * v.xi1, s * v.xi2};
}

// Radial scaling about the chart centre.
template <class T>
constexpr BasicPoint2<T> operator*(const std::type_identity_t<T>& s, const BasicPoint2<T>& p) {
  return {s * p.x1, s * p.x2};
}

template <class T>
constexpr T norm_sq(const BasicPoint2<T>& p) {
  return p.x1 * p.x1 + p.x2 * p.x2;
}

template <class T>
constexpr T norm_sq(const BasicTangent2<T>& v) {
  return v.xi1 * v.xi1 + v.xi2 * v.xi2;
}

// Euclidean pairing <x, xi>.
template <class T>
constexpr T dot(const BasicPoint2<T>& p, const BasicTangent2<T>& v) {
  return p.x1 * v.xi1 + p.x2 * v.xi2;
}

template <class T>
constexpr T dot(const BasicTangent2<T>& u, const BasicTangent2<T>& v) {
  return u.xi1 * v.xi1 + u.xi2 * v.xi2;
}

inline double norm(const Point2& p) { return std::hypot(p.x1, p.x2); }
inline double norm(const Tangent2& v) { return std::hypot(v.xi1, v.xi2); }
inline double distance(const Point2& p, const Point2& q) { return norm(p - q); }

template <class U, class T>
constexpr BasicPoint2<U> lift(const BasicPoint2<T>& p) {
  return {U(p.x1), U(p.x2)};
}

template <class U, class T>
constexpr BasicTangent2<U> lift(const BasicTangent2<T>& v) {
  return {U(v.xi1), U(v.xi2)};
}

template <class U, class T>
constexpr BasicTangentSample<U> lift(const BasicTangentSample<T>& s) {
  return {lift<U>(s.base), lift<U>(s.dir)};
}

/// The ambient model: a disc of radius r centred at the origin of a chart
/// for the constant-curvature space with sign eps.
///
/// eps = 0 is the Euclidean plane, eps = -1 the Klein model of the
/// hyperbolic plane and eps = +1 the gnomonic chart of the upper
/// hemisphere. For eps != 0 the radius is limited to r <= 1.
class DiscChart {
 public:
  // Relative margin of the evaluation guard |x| <= r (1 - kBoundaryMargin).
  static constexpr double kBoundaryMargin = 1e-9;

  DiscChart(int eps, double r) : eps_(eps), r_(r) {
    if (eps < -1 || eps > 1) throw InvalidChart("curvature sign eps must be -1, 0 or 1, got " + std::to_string(eps));
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidChart("disc radius must be positive and finite");
    if (eps != 0 && r > 1.0) throw InvalidChart("disc radius must satisfy r <= 1 when eps != 0");
  }

  int eps() const { return eps_; }
  double epsilon() const { return static_cast<double>(eps_); }
  double r() const { return r_; }
  double r_sq() const { return r_ * r_; }
  double guard_radius() const { return r_ * (1.0 - kBoundaryMargin); }

  friend bool operator==(const DiscChart&, const DiscChart&) = default;

 private:
  int eps_;
  double r_;
};

/// Strict interior test |p| < r.
inline bool contains(const DiscChart& chart, const Point2& p) { return norm_sq(p) < chart.r_sq(); }

/// Throws DomainError unless |x| <= r (1 - 1e-9). Only the value part of a
/// dual-valued point is inspected.
template <class T>
void require_interior(const DiscChart& chart, const BasicPoint2<T>& x) {
  const double a = value_of(x.x1);
  const double b = value_of(x.x2);
  const double q = a * a + b * b;
  if (!(q < chart.r_sq())) {
    throw DomainError("point outside disc: |x| = " + std::to_string(std::sqrt(q)) +
                      " >= r = " + std::to_string(chart.r()));
  }
  const double g = chart.guard_radius();
  if (q > g * g) {
    throw DomainError("point too close to the boundary: |x| = " + std::to_string(std::sqrt(q)) +
                      " exceeds r (1 - 1e-9)");
  }
}

template <class T>
void require_nonzero(const BasicTangent2<T>& v) {
  if (value_of(v.xi1) == 0.0 && value_of(v.xi2) == 0.0) throw DegenerateDirection("tangent direction is zero");
}

template <class T>
void require_valid(const DiscChart& chart, const BasicTangentSample<T>& s) {
  require_interior(chart, s.base);
  require_nonzero(s.dir);
}

/// Positive root of |x + t dir|^2 = radius^2 for |x| < radius.
inline double ray_circle_parameter(const Point2& x, const Tangent2& dir, double radius) {
  const double a = norm_sq(dir);
  if (a == 0.0) throw DegenerateDirection("ray direction is zero");
  const double b = dot(x, dir);
  const double c = norm_sq(x) - radius * radius;
  if (!(c < 0.0)) throw DomainError("ray origin outside disc");
  const double disc = std::sqrt(b * b - a * c);
  // c < 0 means the roots have opposite signs; pick the form without cancellation.
  return b >= 0.0 ? -c / (b + disc) : (disc - b) / a;
}

/// Positive root t* of |x + t dir|^2 = r^2 for an interior x.
inline double ray_exit_parameter(const DiscChart& chart, const Point2& x, const Tangent2& dir) {
  return ray_circle_parameter(x, dir, chart.r());
}

/// The boundary point where the ray x + t dir (t > 0) leaves the disc.
inline Point2 ray_boundary_intersection(const DiscChart& chart, const Point2& x, const Tangent2& dir) {
  const double t = ray_exit_parameter(chart, x, dir);
  return x + t * dir;
}

}  // namespace funkfinsler
