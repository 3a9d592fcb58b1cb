#pragma once

// Closed-form Funk-Finsler (Randers) metric F = alpha + beta on a disc of a
// constant-curvature chart. With D = r^2 - |x|^2, u = 1 + eps|x|^2 and
// w = 1 + eps r^2:
//
//   alpha(x, xi) = sqrt(D |xi|^2 + <x,xi>^2) / D
//   beta(x, xi)  = w <x,xi> / (D u)
//
// alpha is the curvature -1 Klein metric of the disc and does not depend on
// eps. Every function is templated on the scalar so it can be
// differentiated with dual numbers.

#include <cmath>
#include <string_view>
#include <type_traits>

#include "funkfinsler/differentiation.hpp"
#include "funkfinsler/dual.hpp"
#include "funkfinsler/errors.hpp"
#include "funkfinsler/geometry.hpp"
#include "funkfinsler/tensor.hpp"

namespace funkfinsler {

template <class T>
T eval_alpha(const DiscChart& chart, const BasicTangentSample<T>& s) {
  using std::sqrt;
  require_valid(chart, s);
  const T q = norm_sq(s.base);
  const T p = dot(s.base, s.dir);
  const T d = chart.r_sq() - q;
  return sqrt(d * norm_sq(s.dir) + p * p) / d;
}

template <class T>
T eval_beta(const DiscChart& chart, const BasicTangentSample<T>& s) {
  require_valid(chart, s);
  const T q = norm_sq(s.base);
  const T d = chart.r_sq() - q;
  const T u = 1.0 + chart.epsilon() * q;
  const double w = 1.0 + chart.epsilon() * chart.r_sq();
  return w * dot(s.base, s.dir) / (d * u);
}

/// alpha + beta. For inward directions (p < 0) the sum cancels badly near
/// the boundary, so it is rationalized there:
///   F = [u^2 D (x ^ xi)^2 + p^2 (r - |x|)(1 - eps r |x|)(u r + w |x|)] / (q D u (u A - w p)).
template <class T>
T eval_F(const DiscChart& chart, const BasicTangentSample<T>& s) {
  using std::sqrt;
  require_valid(chart, s);
  const T q = norm_sq(s.base);
  const T p = dot(s.base, s.dir);
  const double eps = chart.epsilon();
  const double w = 1.0 + eps * chart.r_sq();
  if (!(w * value_of(p) < 0.0)) return eval_alpha(chart, s) + eval_beta(chart, s);
  const double r = chart.r();
  T rq;
  if constexpr (std::is_same_v<T, double>)
    rq = std::hypot(s.base.x1, s.base.x2);
  else
    rq = sqrt(q);
  const T d = (r - rq) * (r + rq);
  const T u = 1.0 + eps * q;
  const T a = sqrt(d * norm_sq(s.dir) + p * p);
  const T cross = s.base.x1 * s.dir.xi2 - s.base.x2 * s.dir.xi1;
  const T num = u * u * d * cross * cross + p * p * (r - rq) * (1.0 - eps * r * rq) * (u * r + w * rq);
  return num / (q * d * u * (u * a - w * p));
}

/// a_ij with alpha^2 = a_ij xi^i xi^j.
template <class T>
Mat2<T> alpha_tensor(const DiscChart& chart, const BasicPoint2<T>& x) {
  require_interior(chart, x);
  const T d = chart.r_sq() - norm_sq(x);
  const T s = 1.0 / (d * d);
  return {{s * (d + x.x1 * x.x1), s * x.x1 * x.x2, s * x.x1 * x.x2, s * (d + x.x2 * x.x2)}};
}

/// a^ij, the closed-form inverse of alpha_tensor.
template <class T>
Mat2<T> alpha_tensor_inverse(const DiscChart& chart, const BasicPoint2<T>& x) {
  require_interior(chart, x);
  const T d = chart.r_sq() - norm_sq(x);
  const T s = d / chart.r_sq();
  return {{s * (d + x.x2 * x.x2), -s * x.x1 * x.x2, -s * x.x1 * x.x2, s * (d + x.x1 * x.x1)}};
}

/// b_i with beta = b_i xi^i.
template <class T>
Vec2<T> one_form(const DiscChart& chart, const BasicPoint2<T>& x) {
  require_interior(chart, x);
  const T q = norm_sq(x);
  const T k = (1.0 + chart.epsilon() * chart.r_sq()) / ((chart.r_sq() - q) * (1.0 + chart.epsilon() * q));
  return {k * x.x1, k * x.x2};
}

/// Potential of the closed one-form: beta = df with
/// f(x) = 1/2 log((1 + eps|x|^2) / (r^2 - |x|^2)).
template <class T>
T beta_potential(const DiscChart& chart, const BasicPoint2<T>& x) {
  using std::log;
  require_interior(chart, x);
  const T q = norm_sq(x);
  return 0.5 * log((1.0 + chart.epsilon() * q) / (chart.r_sq() - q));
}

/// ||beta||_alpha^2 = a^ij b_i b_j = |x|^2 (1 + eps r^2)^2 / (r^2 (1 + eps|x|^2)^2).
template <class T>
T beta_norm_sq(const DiscChart& chart, const BasicPoint2<T>& x) {
  require_interior(chart, x);
  const T q = norm_sq(x);
  const double w = 1.0 + chart.epsilon() * chart.r_sq();
  const T u = 1.0 + chart.epsilon() * q;
  return q * (w * w) / (chart.r_sq() * u * u);
}

/// Busemann-Hausdorff density (1 - ||beta||^2)^{3/2} sqrt(det a_ij), with
/// det a_ij = r^2 / (r^2 - |x|^2)^3.
template <class T>
T bh_density(const DiscChart& chart, const BasicPoint2<T>& x) {
  using std::sqrt;
  const T c = 1.0 - beta_norm_sq(chart, x);
  const T d = chart.r_sq() - norm_sq(x);
  return c * sqrt(c) * sqrt(chart.r_sq() / (d * d * d));
}

enum class TensorPath {
  dual_hessian,  // 1/2 d^2 F^2 / dxi^i dxi^j by nested duals (canonical)
  closed_form,   // standard Randers expression in alpha, beta, a_ij, b_i
};

constexpr std::string_view to_string(TensorPath p) {
  return p == TensorPath::dual_hessian ? "dual_hessian" : "closed_form";
}

struct FundamentalTensor {
  Mat2<double> g;
  TensorPath path;
};

/// g_ij = (F/alpha)(a_ij - l_i l_j) + (l_i + b_i)(l_j + b_j), l_i = a_ij xi^j / alpha.
inline Mat2<double> fundamental_tensor_closed(const DiscChart& chart, const TangentSample& s) {
  const double alpha = eval_alpha(chart, s);
  const double f = eval_F(chart, s);
  const Mat2<double> a = alpha_tensor(chart, s.base);
  const Vec2<double> b = one_form(chart, s.base);
  const Vec2<double> xi{s.dir.xi1, s.dir.xi2};
  Vec2<double> l = a * xi;
  l = {l[0] / alpha, l[1] / alpha};
  const Vec2<double> lb{l[0] + b[0], l[1] + b[1]};
  return (f / alpha) * (a - outer(l, l)) + outer(lb, lb);
}

inline Mat2<double> fundamental_tensor_dual(const DiscChart& chart, const TangentSample& s) {
  auto half_f2 = [&chart](const auto& w) {
    const auto f = eval_F(chart, w);
    return 0.5 * f * f;
  };
  Mat2<double> g;
  g(0, 0) = second_partial(half_f2, s, 2, 2);
  g(0, 1) = second_partial(half_f2, s, 2, 3);
  g(1, 0) = g(0, 1);
  g(1, 1) = second_partial(half_f2, s, 3, 3);
  return g;
}

/// The fundamental tensor at (x, xi); throws ConvexityViolation if it is
/// not positive definite.
inline FundamentalTensor fundamental_tensor(const DiscChart& chart, const TangentSample& s,
                                            TensorPath path = TensorPath::dual_hessian) {
  FundamentalTensor out{path == TensorPath::dual_hessian ? fundamental_tensor_dual(chart, s)
                                                         : fundamental_tensor_closed(chart, s),
                        path};
  if (!is_positive_definite(out.g)) throw ConvexityViolation("fundamental tensor is not positive definite");
  return out;
}

/// tau = ln(sqrt(det g) / sigma_BH).
inline double distortion(const DiscChart& chart, const TangentSample& s) {
  const Mat2<double> g = fundamental_tensor(chart, s).g;
  return std::log(std::sqrt(det(g)) / bh_density(chart, s.base));
}

struct MetricEval {
  double F;
  double alpha;
  double beta;
  Mat2<double> a;
  Mat2<double> a_inv;
  Vec2<double> b;
  double beta_norm_sq;
  Mat2<double> g;
  TensorPath g_path;
};

inline MetricEval evaluate_metric(const DiscChart& chart, const TangentSample& s) {
  MetricEval m;
  m.alpha = eval_alpha(chart, s);
  m.beta = eval_beta(chart, s);
  m.F = eval_F(chart, s);
  m.a = alpha_tensor(chart, s.base);
  m.a_inv = alpha_tensor_inverse(chart, s.base);
  m.b = one_form(chart, s.base);
  m.beta_norm_sq = beta_norm_sq(chart, s.base);
  const FundamentalTensor ft = fundamental_tensor(chart, s);
  m.g = ft.g;
  m.g_path = ft.path;
  return m;
}

}  // namespace funkfinsler
