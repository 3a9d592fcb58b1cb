#pragma once

// Generic Finsler pipeline driven by a black-box metric function.
//
// A metric function is any callable F(s) over BasicTangentSample<U> that
// returns U, for U = double and U = nested duals. Everything here is built
// from F alone (no closed forms), so it serves as the independent oracle:
//
//   g_ij = 1/2 [F^2]_{xi^i xi^j}
//   G^i  = 1/4 g^{il} ([F^2]_{x^k xi^l} xi^k - [F^2]_{x^l})
//   R^i_k = 2 dG^i/dx^k - xi^j d2G^i/dx^j dxi^k + 2 G^j d2G^i/dxi^j dxi^k
//           - dG^i/dxi^j dG^j/dxi^k
//   S = dG^m/dxi^m - xi^m d(ln sigma)/dx^m

#include <algorithm>
#include <cmath>
#include <concepts>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "funkfinsler/differentiation.hpp"
#include "funkfinsler/dual.hpp"
#include "funkfinsler/errors.hpp"
#include "funkfinsler/geometry.hpp"
#include "funkfinsler/metric.hpp"
#include "funkfinsler/tensor.hpp"

namespace funkfinsler {

template <class Fn>
concept ScalarMetricFn = requires(const Fn& f, const TangentSample& s, const BasicTangentSample<Dual<double>>& d) {
  { f(s) } -> std::convertible_to<double>;
  { f(d) } -> std::same_as<Dual<double>>;
};

/// F of a chart as a metric function.
inline auto metric_fn(const DiscChart& chart) {
  return [chart](const auto& s) { return eval_F(chart, s); };
}

/// alpha of a chart alone (the beta = 0 Riemannian baseline).
inline auto alpha_fn(const DiscChart& chart) {
  return [chart](const auto& s) { return eval_alpha(chart, s); };
}

enum class Differentiation { dual, central };

/// Throws NotHomogeneous unless |F(x, c xi) - c F(x, xi)| <= 1e-8 c F for c in {0.5, 2}.
template <ScalarMetricFn Fn>
void check_homogeneity(const Fn& fn, const TangentSample& s) {
  const double f = fn(s);
  for (double c : {0.5, 2.0}) {
    const double fc = fn(TangentSample{s.base, c * s.dir});
    if (!(std::abs(fc - c * f) <= 1e-8 * c * std::abs(f)))
      throw NotHomogeneous("metric function is not positively 1-homogeneous (c = " + std::to_string(c) + ")");
  }
}

namespace detail {

inline TangentSample shifted(TangentSample s, int i, double h) {
  s[i] += h;
  return s;
}

// Central second difference d2E/dz_i dz_j.
template <class Fn>
double fd_second(const Fn& e, const TangentSample& s, int i, int j, double hi, double hj) {
  if (i == j) return (e(shifted(s, i, hi)) - 2.0 * e(s) + e(shifted(s, i, -hi))) / (hi * hi);
  auto at = [&](double a, double b) { return e(shifted(shifted(s, i, a), j, b)); };
  return (at(hi, hj) - at(hi, -hj) - at(-hi, hj) + at(-hi, -hj)) / (4.0 * hi * hj);
}

template <class Fn>
double fd_first(const Fn& e, const TangentSample& s, int i, double h) {
  return (e(shifted(s, i, h)) - e(shifted(s, i, -h))) / (2.0 * h);
}

inline double fiber_step(const TangentSample& s) { return 1e-4 * std::max(1.0, norm(s.dir)); }

template <class T>
Vec2<T> solve(const Mat2<T>& a, const Vec2<T>& b) {
  return inverse(a) * b;
}

}  // namespace detail

struct OracleTensor {
  Mat2<double> g;
  bool positive_definite;
  Differentiation mode;
  double step_change = 0.0;  // max |g(h) - g(h/2)| in central mode
};

/// g_ij = 1/2 d2(F^2)/dxi^i dxi^j. A non positive definite result is
/// reported in the return value, not thrown.
template <ScalarMetricFn Fn>
OracleTensor oracle_g(const Fn& fn, const TangentSample& s, Differentiation mode = Differentiation::dual) {
  require_nonzero(s.dir);
  check_homogeneity(fn, s);
  OracleTensor out{};
  out.mode = mode;
  if (mode == Differentiation::dual) {
    auto half_f2 = [&fn](const auto& w) {
      const auto f = fn(w);
      return 0.5 * f * f;
    };
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) out.g(i, j) = out.g(j, i) = second_partial(half_f2, s, 2 + i, 2 + j);
  } else {
    auto half_f2 = [&fn](const TangentSample& w) {
      const double f = fn(w);
      return 0.5 * f * f;
    };
    auto at_step = [&](double h) {
      Mat2<double> g;
      for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) g(i, j) = g(j, i) = detail::fd_second(half_f2, s, 2 + i, 2 + j, h, h);
      return g;
    };
    const double h = detail::fiber_step(s);
    const Mat2<double> g1 = at_step(h);
    const Mat2<double> g2 = at_step(0.5 * h);
    out.step_change = max_abs_diff(g1, g2);
    if (out.step_change > 1e-5 * std::max(1.0, max_abs(g2)))
      throw StepSizeFailure("oracle_g: halving the step changed g by " + std::to_string(out.step_change));
    out.g = (1.0 / 3.0) * (4.0 * g2 - g1);
  }
  out.positive_definite = is_positive_definite(out.g);
  return out;
}

/// Spray coefficients from the metric function alone, generic in the scalar
/// so that the result itself can be differentiated.
template <class Fn, class T>
Vec2<T> spray_generic(const Fn& fn, const BasicTangentSample<T>& s) {
  auto e = [&fn](const auto& w) {
    const auto f = fn(w);
    return f * f;
  };
  Mat2<T> g;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) g(i, j) = g(j, i) = 0.5 * second_partial(e, s, 2 + i, 2 + j);
  Vec2<T> rhs;
  for (int l = 0; l < 2; ++l) {
    T v = -partial(e, s, l);
    for (int k = 0; k < 2; ++k) v = v + second_partial(e, s, k, 2 + l) * s.dir[k];
    rhs[l] = 0.25 * v;
  }
  return detail::solve(g, rhs);
}

struct OracleSpray {
  Vec2<double> G;
  bool ill_conditioned;  // condition number of g above 1e12
  Differentiation mode;
};

template <ScalarMetricFn Fn>
OracleSpray oracle_spray(const Fn& fn, const TangentSample& s, Differentiation mode = Differentiation::dual) {
  require_nonzero(s.dir);
  check_homogeneity(fn, s);
  OracleSpray out{};
  out.mode = mode;
  Mat2<double> g;
  if (mode == Differentiation::dual) {
    out.G = spray_generic(fn, s);
    g = oracle_g(fn, s).g;
  } else {
    auto e = [&fn](const TangentSample& w) {
      const double f = fn(w);
      return f * f;
    };
    const double hv = detail::fiber_step(s);
    const double hx = 1e-4;
    Vec2<double> rhs;
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) g(i, j) = g(j, i) = 0.5 * detail::fd_second(e, s, 2 + i, 2 + j, hv, hv);
    for (int l = 0; l < 2; ++l) {
      double v = -detail::fd_first(e, s, l, hx);
      for (int k = 0; k < 2; ++k) v += detail::fd_second(e, s, k, 2 + l, hx, hv) * s.dir[k];
      rhs[l] = 0.25 * v;
    }
    out.G = detail::solve(g, rhs);
  }
  const Vec2<double> ev = symmetric_eigenvalues(g);
  out.ill_conditioned = !(ev[0] > 0.0) || ev[1] / ev[0] > 1e12;
  return out;
}

/// The oracle spray as a spray function (generic scalar).
template <ScalarMetricFn Fn>
auto oracle_spray_fn(const Fn& fn) {
  return [fn](const auto& s) { return spray_generic(fn, s); };
}

namespace detail {

struct SprayJet {
  Vec2<double> G;
  Mat2<double> dx;   // dx(i, k) = dG^i / dx^k
  Mat2<double> dv;   // dv(i, j) = dG^i / dxi^j
  Tensor3<double> dxdv;  // dxdv[i][j][k] = d2G^i / dx^j dxi^k
  Tensor3<double> dvdv;  // dvdv[i][j][k] = d2G^i / dxi^j dxi^k
};

inline Mat2<double> assemble_riemann(const SprayJet& jet, const Tangent2& xi) {
  Mat2<double> r;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      double v = 2.0 * jet.dx(i, k);
      for (int j = 0; j < 2; ++j)
        v += -xi[j] * jet.dxdv[i][j][k] + 2.0 * jet.G[j] * jet.dvdv[i][j][k] - jet.dv(i, j) * jet.dv(j, k);
      r(i, k) = v;
    }
  return r;
}

template <class Spray>
SprayJet jet_dual(const Spray& spray, const TangentSample& s) {
  SprayJet jet{};
  jet.G = spray(s);
  for (int k = 0; k < 2; ++k) {
    const Vec2<double> ax = partial(spray, s, k);
    const Vec2<double> av = partial(spray, s, 2 + k);
    for (int i = 0; i < 2; ++i) {
      jet.dx(i, k) = ax[i];
      jet.dv(i, k) = av[i];
    }
  }
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      const Vec2<double> m = second_partial(spray, s, j, 2 + k);
      const Vec2<double> n = second_partial(spray, s, 2 + j, 2 + k);
      for (int i = 0; i < 2; ++i) {
        jet.dxdv[i][j][k] = m[i];
        jet.dvdv[i][j][k] = n[i];
      }
    }
  return jet;
}

template <class Spray>
SprayJet jet_central(const Spray& spray, const TangentSample& s, double hx, double hv) {
  SprayJet jet{};
  jet.G = spray(s);
  for (int c = 0; c < 2; ++c) {
    auto comp = [&](const TangentSample& w) { return spray(w)[c]; };
    for (int k = 0; k < 2; ++k) {
      jet.dx(c, k) = fd_first(comp, s, k, hx);
      jet.dv(c, k) = fd_first(comp, s, 2 + k, hv);
    }
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        jet.dxdv[c][j][k] = fd_second(comp, s, j, 2 + k, hx, hv);
        jet.dvdv[c][j][k] = fd_second(comp, s, 2 + j, 2 + k, hv, hv);
      }
  }
  return jet;
}

}  // namespace detail

/// Riemann curvature R^i_k from a spray function. The dual path needs a
/// spray that is generic in the scalar; the central path only calls it on
/// doubles, uses central differences at steps h and h/2 and returns the
/// Richardson combination, throwing StepSizeFailure when the two steps
/// disagree by more than 10x the 1e-4 relative target.
template <class Spray>
Mat2<double> riemann_from_spray(const Spray& spray, const TangentSample& s,
                                Differentiation mode = Differentiation::dual, double dist_hint = 1.0) {
  require_nonzero(s.dir);
  if (mode == Differentiation::dual) return detail::assemble_riemann(detail::jet_dual(spray, s), s.dir);
  // x-derivatives vary on the scale of the boundary distance, which the
  // caller passes in as dist_hint.
  const double hv = 1e-3 * norm(s.dir);
  const double hx = 1e-3 * std::min(1.0, std::max(1e-3, dist_hint));
  const Mat2<double> r1 = detail::assemble_riemann(detail::jet_central(spray, s, hx, hv), s.dir);
  const Mat2<double> r2 = detail::assemble_riemann(detail::jet_central(spray, s, 0.5 * hx, 0.5 * hv), s.dir);
  const double change = max_abs_diff(r1, r2);
  if (change > 10.0 * 1e-4 * std::max(1.0, max_abs(r2)))
    throw StepSizeFailure("riemann_from_spray: step halving changed R by " + std::to_string(change));
  return (1.0 / 3.0) * (4.0 * r2 - r1);
}

template <ScalarMetricFn Fn>
Mat2<double> oracle_riemann(const Fn& fn, const TangentSample& s) {
  check_homogeneity(fn, s);
  return riemann_from_spray(oracle_spray_fn(fn), s);
}

/// Busemann-Hausdorff density pi / area{xi : F(x, xi) < 1}, with the area
/// 1/2 int F(x, e_theta)^-2 d theta from an n-point periodic rule.
template <class Fn, class T>
T bh_density_quadrature(const Fn& fn, const BasicPoint2<T>& x, int n = 720) {
  T sum = T(0);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    const BasicTangentSample<T> s{x, {T(std::cos(theta)), T(std::sin(theta))}};
    const T f = fn(s);
    sum = sum + 1.0 / (f * f);
  }
  return double(n) / sum;
}

/// S = dG^m/dxi^m - xi^m d(ln sigma)/dx^m for a spray function and a
/// density function sigma(x), both generic in the scalar.
template <class Spray, class Density>
double s_curvature_from_spray(const Spray& spray, const Density& sigma, const TangentSample& s) {
  double div = 0.0;
  for (int m = 0; m < 2; ++m) div += partial(spray, s, 2 + m)[m];
  auto log_sigma = [&sigma](const auto& y) {
    using std::log;
    return log(sigma(y));
  };
  const Vec2<double> grad = gradient(log_sigma, s.base);
  return div - (grad[0] * s.dir.xi1 + grad[1] * s.dir.xi2);
}

/// Oracle S-curvature with the chart's closed-form density.
template <ScalarMetricFn Fn>
double oracle_s_curvature(const Fn& fn, const DiscChart& chart, const TangentSample& s) {
  check_homogeneity(fn, s);
  return s_curvature_from_spray(oracle_spray_fn(fn), [&chart](const auto& y) { return bh_density(chart, y); }, s);
}

/// Oracle S-curvature with the density from indicatrix-area quadrature, so
/// nothing but fn is used.
template <ScalarMetricFn Fn>
double oracle_s_curvature(const Fn& fn, const TangentSample& s) {
  check_homogeneity(fn, s);
  return s_curvature_from_spray(oracle_spray_fn(fn), [&fn](const auto& y) { return bh_density_quadrature(fn, y); },
                                s);
}

struct OracleFlag {
  double K;      // g-quotient with the flag (xi, u)
  double K_fit;  // least-squares fit of R^i_j = K (F^2 delta - F F_{xi^j} xi^i)
};

/// Flag curvature K = g(R u, u) / (g(xi, xi) g(u, u) - g(xi, u)^2).
///
/// The default u is the Euclidean perpendicular of xi made g-orthogonal to
/// xi. Throws DegenerateFlag for a degenerate (xi, u) pair and
/// InvariantViolation if the two extractions differ by more than
/// 1e-4 (1 + |K|).
template <ScalarMetricFn Fn>
OracleFlag oracle_flag(const Fn& fn, const TangentSample& s, std::optional<Tangent2> u_in = std::nullopt) {
  require_nonzero(s.dir);
  const Mat2<double> g = oracle_g(fn, s).g;
  const Mat2<double> r = oracle_riemann(fn, s);
  const Vec2<double> y{s.dir.xi1, s.dir.xi2};
  Vec2<double> u = u_in ? Vec2<double>{u_in->xi1, u_in->xi2} : Vec2<double>{-s.dir.xi2, s.dir.xi1};
  if (!u_in) {
    const double c = bilinear(g, y, u) / bilinear(g, y, y);
    u = {u[0] - c * y[0], u[1] - c * y[1]};
  }
  const double gyy = bilinear(g, y, y);
  const double guu = bilinear(g, u, u);
  const double gyu = bilinear(g, y, u);
  const double denom = gyy * guu - gyu * gyu;
  if (!(denom > 1e-14 * gyy * guu)) throw DegenerateFlag("flag (xi, u) is degenerate");
  OracleFlag out{};
  out.K = bilinear(g, r * u, u) / denom;

  const double f = fn(s);
  auto fn_ref = [&fn](const auto& w) { return fn(w); };
  const Vec2<double> fk{partial(fn_ref, s, 2), partial(fn_ref, s, 3)};
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double m = f * f * (i == j ? 1.0 : 0.0) - f * fk[j] * y[i];
      num += r(i, j) * m;
      den += m * m;
    }
  out.K_fit = num / den;
  if (std::abs(out.K - out.K_fit) > 1e-4 * (1.0 + std::abs(out.K)))
    throw InvariantViolation("oracle_flag: quotient and fit disagree (" + std::to_string(out.K) + " vs " +
                             std::to_string(out.K_fit) + ")");
  return out;
}

struct GeodesicPath {
  std::vector<double> t;
  std::vector<Point2> x;
  std::vector<Tangent2> v;
};

/// Thrown when an RK4 step would leave |x| <= stop_radius; carries the path
/// integrated so far.
class BoundaryExit : public DomainError {
 public:
  BoundaryExit(const std::string& what, GeodesicPath partial) : DomainError(what), path(std::move(partial)) {}
  GeodesicPath path;
};

/// Fixed-step RK4 for x'' = -2 G(x, x'). stop_radius <= 0 means the chart's
/// evaluation guard.
template <class Spray>
GeodesicPath integrate_geodesic_ode(const Spray& spray, const DiscChart& chart, const TangentSample& s, double t_end,
                                    int n_steps, double stop_radius = 0.0) {
  require_valid(chart, s);
  if (n_steps < 1) throw std::invalid_argument("integrate_geodesic_ode needs n_steps >= 1");
  const double limit = stop_radius > 0.0 ? std::min(stop_radius, chart.guard_radius()) : chart.guard_radius();
  if (norm(s.base) > limit) throw DomainError("geodesic start lies beyond the stop radius");

  struct State {
    Point2 x;
    Tangent2 v;
  };
  auto accel = [&spray](const Point2& x, const Tangent2& v) {
    const Vec2<double> g = spray(TangentSample{x, v});
    return Tangent2{-2.0 * g[0], -2.0 * g[1]};
  };
  auto inside = [&](const Point2& p) { return norm(p) <= limit; };

  GeodesicPath path;
  path.t.push_back(0.0);
  path.x.push_back(s.base);
  path.v.push_back(s.dir);
  State y{s.base, s.dir};
  const double h = t_end / n_steps;
  for (int n = 0; n < n_steps; ++n) {
    const Tangent2 k1x = y.v;
    const Tangent2 k1v = accel(y.x, y.v);
    const Point2 x2 = y.x + (0.5 * h) * k1x;
    const Tangent2 v2 = y.v + (0.5 * h) * k1v;
    if (!inside(x2)) throw BoundaryExit("geodesic left the disc", std::move(path));
    const Tangent2 k2v = accel(x2, v2);
    const Point2 x3 = y.x + (0.5 * h) * v2;
    const Tangent2 v3 = y.v + (0.5 * h) * k2v;
    if (!inside(x3)) throw BoundaryExit("geodesic left the disc", std::move(path));
    const Tangent2 k3v = accel(x3, v3);
    const Point2 x4 = y.x + h * v3;
    const Tangent2 v4 = y.v + h * k3v;
    if (!inside(x4)) throw BoundaryExit("geodesic left the disc", std::move(path));
    const Tangent2 k4v = accel(x4, v4);
    const State next{y.x + (h / 6.0) * (k1x + 2.0 * v2 + 2.0 * v3 + v4),
                     y.v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
    if (!inside(next.x)) throw BoundaryExit("geodesic left the disc", std::move(path));
    y = next;
    path.t.push_back((n + 1) * h);
    path.x.push_back(y.x);
    path.v.push_back(y.v);
  }
  return path;
}

/// Largest Euclidean distance of the path from the line through (x0, xi0).
inline double max_transverse_deviation(const GeodesicPath& path, const Point2& x0, const Tangent2& xi0) {
  const double len = norm(xi0);
  double worst = 0.0;
  for (const Point2& p : path.x) {
    const Tangent2 d = p - x0;
    worst = std::max(worst, std::abs(d.xi1 * xi0.xi2 - d.xi2 * xi0.xi1) / len);
  }
  return worst;
}

}  // namespace funkfinsler
