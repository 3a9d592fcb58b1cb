#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>

namespace funkfinsler {

template <class T>
using Vec2 = std::array<T, 2>;

// T[k][i][j]; for Christoffel symbols k is the upper index.
template <class T>
using Tensor3 = std::array<std::array<std::array<T, 2>, 2>, 2>;

// Row-major 2x2 matrix. Used for a_ij, a^ij, g_ij, h_ij and R^i_k.
template <class T>
struct Mat2 {
  std::array<T, 4> e{};

  constexpr T& operator()(int i, int j) { return e[2 * i + j]; }
  constexpr const T& operator()(int i, int j) const { return e[2 * i + j]; }

  static constexpr Mat2 identity() { return {{T(1), T(0), T(0), T(1)}}; }
  static constexpr Mat2 diagonal(const T& s) { return {{s, T(0), T(0), s}}; }
};

template <class T>
constexpr Mat2<T> operator+(const Mat2<T>& a, const Mat2<T>& b) {
  return {{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]}};
}

template <class T>
constexpr Mat2<T> operator-(const Mat2<T>& a, const Mat2<T>& b) {
  return {{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]}};
}

template <class T>
constexpr Mat2<T> operator*(const std::type_identity_t<T>& s, const Mat2<T>& a) {
  return {{s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]}};
}

template <class T>
constexpr Mat2<T> operator*(const Mat2<T>& a, const Mat2<T>& b) {
  Mat2<T> c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return c;
}

template <class T>
constexpr Vec2<T> operator*(const Mat2<T>& a, const Vec2<T>& v) {
  return {a(0, 0) * v[0] + a(0, 1) * v[1], a(1, 0) * v[0] + a(1, 1) * v[1]};
}

template <class T>
constexpr T det(const Mat2<T>& a) {
  return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

template <class T>
constexpr T trace(const Mat2<T>& a) {
  return a(0, 0) + a(1, 1);
}

template <class T>
constexpr Mat2<T> inverse(const Mat2<T>& a) {
  const T inv = T(1) / det(a);
  return {{a(1, 1) * inv, -a(0, 1) * inv, -a(1, 0) * inv, a(0, 0) * inv}};
}

template <class T>
constexpr Mat2<T> outer(const Vec2<T>& u, const Vec2<T>& v) {
  return {{u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]}};
}

// u^T A v
template <class T>
constexpr T bilinear(const Mat2<T>& a, const Vec2<T>& u, const Vec2<T>& v) {
  return u[0] * (a(0, 0) * v[0] + a(0, 1) * v[1]) + u[1] * (a(1, 0) * v[0] + a(1, 1) * v[1]);
}

inline double max_abs(const Mat2<double>& a) {
  double m = 0.0;
  for (double x : a.e) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs(const Vec2<double>& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

inline double max_abs_diff(const Mat2<double>& a, const Mat2<double>& b) { return max_abs(a - b); }

inline double max_abs_diff(const Vec2<double>& a, const Vec2<double>& b) {
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

/// Eigenvalues of the symmetric part of a, ascending.
///
/// The smaller root is recovered as det / larger when both share a sign,
/// which keeps it accurate for nearly singular positive definite input.
inline Vec2<double> symmetric_eigenvalues(const Mat2<double>& a) {
  const double off = 0.5 * (a(0, 1) + a(1, 0));
  const double mean = 0.5 * (a(0, 0) + a(1, 1));
  const double half = std::hypot(0.5 * (a(0, 0) - a(1, 1)), off);
  const double hi = mean + half;
  const double lo_naive = mean - half;
  const double d = a(0, 0) * a(1, 1) - off * off;
  if (hi > 0.0 && d > 0.0) return {d / hi, hi};
  return {lo_naive, hi};
}

inline bool is_positive_definite(const Mat2<double>& a) { return symmetric_eigenvalues(a)[0] > 0.0; }

}  // namespace funkfinsler
