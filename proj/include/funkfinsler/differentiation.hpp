#pragma once

// Partial derivatives of generic callables by nested dual numbers.
//
// A callable f is "generic" when it accepts BasicTangentSample<U> (or
// BasicPoint2<U>) for any scalar U in {double, Dual<double>, ...} and
// returns U, Vec2<U> or Mat2<U>. partial() seeds one component, evaluates
// f one dual level up and strips the derivative part.

#include <array>

#include "funkfinsler/dual.hpp"
#include "funkfinsler/geometry.hpp"
#include "funkfinsler/tensor.hpp"

namespace funkfinsler {

namespace detail {

template <class T>
constexpr T derivative_part(const Dual<T>& x) {
  return x.d;
}
template <class T, std::size_t N>
constexpr std::array<T, N> derivative_part(const std::array<Dual<T>, N>& a) {
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i].d;
  return out;
}
template <class T>
constexpr Mat2<T> derivative_part(const Mat2<Dual<T>>& m) {
  return {derivative_part(m.e)};
}

template <class T>
constexpr T value_part(const Dual<T>& x) {
  return x.v;
}
template <class T, std::size_t N>
constexpr std::array<T, N> value_part(const std::array<Dual<T>, N>& a) {
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i].v;
  return out;
}
template <class T>
constexpr Mat2<T> value_part(const Mat2<Dual<T>>& m) {
  return {value_part(m.e)};
}

}  // namespace detail

/// d f / d z_i with z = (x1, x2, xi1, xi2).
template <class T, class Fn>
auto partial(Fn&& f, const BasicTangentSample<T>& s, int i) {
  auto z = lift<Dual<T>>(s);
  z[i].d = T(1);
  return detail::derivative_part(f(z));
}

/// d f / d x_i for a function of the base point only.
template <class T, class Fn>
auto partial(Fn&& f, const BasicPoint2<T>& x, int i) {
  auto z = lift<Dual<T>>(x);
  z[i].d = T(1);
  return detail::derivative_part(f(z));
}

/// d^2 f / dz_i dz_j.
template <class S, class Fn>
auto second_partial(Fn&& f, const S& s, int i, int j) {
  return partial([&](const auto& w) { return partial(f, w, i); }, s, j);
}

/// Euclidean gradient of a scalar function of the base point.
template <class T, class Fn>
Vec2<T> gradient(Fn&& f, const BasicPoint2<T>& x) {
  return {partial(f, x, 0), partial(f, x, 1)};
}

}  // namespace funkfinsler
