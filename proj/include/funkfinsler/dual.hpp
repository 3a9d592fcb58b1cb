#pragma once

#include <cmath>
#include <type_traits>

namespace funkfinsler {

// Forward-mode dual number v + d*eps, eps^2 = 0. Nest Dual<Dual<T>> for
// higher derivatives; each level carries one seeded direction.
template <class T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  constexpr Dual(const T& value) : v(value), d(T(0)) {}
  constexpr Dual(const T& value, const T& deriv) : v(value), d(deriv) {}
  template <class S>
    requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
  constexpr Dual(S value) : v(T(value)), d(T(0)) {}

  constexpr Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) { return *this = *this * o; }
  constexpr Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend constexpr Dual operator+(const Dual& a, const Dual& b) {
    return {a.v + b.v, a.d + b.d};
  }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) {
    return {a.v - b.v, a.d - b.d};
  }
  friend constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    const T inv = T(1) / b.v;
    const T q = a.v * inv;
    return {q, (a.d - q * b.d) * inv};
  }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

constexpr double value_of(double x) { return x; }
template <class T>
constexpr double value_of(const Dual<T>& x) {
  return value_of(x.v);
}

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  const T s = sqrt(a.v);
  return {s, a.d / (T(2) * s)};
}

template <class T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.v), a.d / a.v};
}

template <class T>
Dual<T> log1p(const Dual<T>& a) {
  using std::log1p;
  return {log1p(a.v), a.d / (T(1) + a.v)};
}

template <class T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  const T e = exp(a.v);
  return {e, a.d * e};
}

template <class T>
Dual<T> abs(const Dual<T>& a) {
  return value_of(a) < 0.0 ? -a : a;
}

/// Exact first derivative of a scalar function at t.
template <class Fn>
double derivative(Fn&& f, double t) {
  return f(Dual<double>(t, 1.0)).d;
}

/// Central difference (f(t+h) - f(t-h)) / 2h.
template <class Fn>
double central_derivative(Fn&& f, double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

}  // namespace funkfinsler
