#pragma once

// Covariant pipeline and curvatures of the Funk-Finsler metric.
//
// Notation used throughout: q = |x|^2, p = <x,xi>, Y = |xi|^2,
// D = r^2 - q, u = 1 + eps q, w = 1 + eps r^2,
// A = sqrt(D Y + p^2) (so alpha = A / D) and Q = u A + w p (so F = Q / (D u)).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "funkfinsler/differentiation.hpp"
#include "funkfinsler/errors.hpp"
#include "funkfinsler/geometry.hpp"
#include "funkfinsler/metric.hpp"
#include "funkfinsler/sampling.hpp"
#include "funkfinsler/tensor.hpp"

namespace funkfinsler {

/// Levi-Civita symbols of alpha, gamma[k][i][j] = (x^i delta_kj + x^j delta_ki) / D.
template <class T>
Tensor3<T> christoffel(const DiscChart& chart, const BasicPoint2<T>& x) {
  require_interior(chart, x);
  const T inv = 1.0 / (chart.r_sq() - norm_sq(x));
  Tensor3<T> g{};
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        T v = T(0);
        if (k == j) v = v + x[i];
        if (k == i) v = v + x[j];
        g[k][i][j] = v * inv;
      }
  return g;
}

/// Closed form of b_{i|j} = (w / (D u)) (delta_ij - 2 eps x^i x^j / u).
template <class T>
Mat2<T> covariant_b_closed(const DiscChart& chart, const BasicPoint2<T>& x) {
  require_interior(chart, x);
  const double eps = chart.epsilon();
  const T q = norm_sq(x);
  const T u = 1.0 + eps * q;
  const T k = (1.0 + eps * chart.r_sq()) / ((chart.r_sq() - q) * u);
  Mat2<T> m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = k * ((i == j ? 1.0 : 0.0) - 2.0 * eps * x[i] * x[j] / u);
  return m;
}

/// rho = 1/2 log((r^2 - q)(1 - eps^2 r^2 q) / (r^2 (1 + eps q)^2)).
template <class T>
T rho_closed(const DiscChart& chart, const BasicPoint2<T>& x) {
  using std::log;
  require_interior(chart, x);
  const double eps = chart.epsilon();
  const T q = norm_sq(x);
  const T u = 1.0 + eps * q;
  return 0.5 * log((chart.r_sq() - q) * (1.0 - eps * eps * chart.r_sq() * q) / (chart.r_sq() * u * u));
}

/// rho = log sqrt(1 - ||beta||_alpha^2) from its definition.
template <class T>
T rho_from_beta(const DiscChart& chart, const BasicPoint2<T>& x) {
  using std::log;
  return 0.5 * log(1.0 - beta_norm_sq(chart, x));
}

struct CovariantData {
  Tensor3<double> gamma;   // gamma[k][i][j]
  Mat2<double> db;         // db(i, j) = d b_i / d x^j
  Mat2<double> b_cov;      // b_{i|j}
  Tensor3<double> b_cov2;  // b_cov2[i][j][k] = b_{i|j|k}
  Mat2<double> r;          // r_ij
  Mat2<double> s;          // s_ij
  Mat2<double> s_up;       // s^i_j
  Vec2<double> s_vec;      // s_j
  Vec2<double> r_vec;      // r_j
  Vec2<double> b;          // b_i
  Vec2<double> b_up;       // b^i
  Mat2<double> e;          // e_ij
  double rho;
  Vec2<double> rho_grad;   // rho_i

  double e00(const Tangent2& xi) const { return quad(e, xi); }
  double s0(const Tangent2& xi) const { return s_vec[0] * xi.xi1 + s_vec[1] * xi.xi2; }
  double rho0(const Tangent2& xi) const { return rho_grad[0] * xi.xi1 + rho_grad[1] * xi.xi2; }
  Vec2<double> s_up0(const Tangent2& xi) const { return s_up * Vec2<double>{xi.xi1, xi.xi2}; }

  static double quad(const Mat2<double>& m, const Tangent2& xi) {
    const Vec2<double> v{xi.xi1, xi.xi2};
    return bilinear(m, v, v);
  }
};

/// Full covariant data of beta with respect to alpha at x.
///
/// b_{i|j} comes from the definition (dual partials of b_i minus the
/// Christoffel term); b_{i|j|k} differentiates the closed-form b_{i|j}.
/// Throws InvariantViolation if s_ij fails to vanish.
inline CovariantData covariant_b(const DiscChart& chart, const Point2& x) {
  CovariantData c{};
  c.gamma = christoffel(chart, x);
  c.b = one_form(chart, x);
  const Mat2<double> a_inv = alpha_tensor_inverse(chart, x);
  c.b_up = a_inv * c.b;

  auto b_fn = [&chart](const auto& y) { return one_form(chart, y); };
  for (int j = 0; j < 2; ++j) {
    const Vec2<double> col = partial(b_fn, x, j);
    c.db(0, j) = col[0];
    c.db(1, j) = col[1];
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c.b_cov(i, j) = c.db(i, j) - (c.b[0] * c.gamma[0][i][j] + c.b[1] * c.gamma[1][i][j]);

  auto bij_fn = [&chart](const auto& y) { return covariant_b_closed(chart, y); };
  const Mat2<double> bij = covariant_b_closed(chart, x);
  for (int k = 0; k < 2; ++k) {
    const Mat2<double> dk = partial(bij_fn, x, k);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double corr = 0.0;
        for (int m = 0; m < 2; ++m) corr += bij(i, m) * c.gamma[m][j][k] + bij(j, m) * c.gamma[m][i][k];
        c.b_cov2[i][j][k] = dk(i, j) - corr;
      }
  }

  Mat2<double> bt;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) bt(i, j) = c.b_cov(j, i);
  c.r = 0.5 * (c.b_cov + bt);
  c.s = 0.5 * (c.b_cov - bt);
  const double scale = std::max(1.0, max_abs(c.b_cov));
  if (max_abs(c.s) > 1e-12 * scale) throw InvariantViolation("s_ij does not vanish: beta is not closed");

  c.s_up = a_inv * c.s;
  for (int j = 0; j < 2; ++j) {
    c.s_vec[j] = c.b[0] * c.s_up(0, j) + c.b[1] * c.s_up(1, j);
    c.r_vec[j] = c.b_up[0] * c.r(0, j) + c.b_up[1] * c.r(1, j);
  }
  c.e = c.r + outer(c.b, c.s_vec) + outer(c.s_vec, c.b);
  c.rho = rho_from_beta(chart, x);
  c.rho_grad = gradient([&chart](const auto& y) { return rho_from_beta(chart, y); }, x);
  return c;
}

/// G^i = xi^i / D * (p + w (u Y - 2 eps p^2) / (2 F u^2)).
template <class T>
Vec2<T> spray(const DiscChart& chart, const BasicTangentSample<T>& s) {
  const double eps = chart.epsilon();
  const T f = eval_F(chart, s);
  const T q = norm_sq(s.base);
  const T p = dot(s.base, s.dir);
  const T u = 1.0 + eps * q;
  const T scale =
      (p + (1.0 + eps * chart.r_sq()) * (u * norm_sq(s.dir) - 2.0 * eps * p * p) / (2.0 * f * u * u)) /
      (chart.r_sq() - q);
  return {scale * s.dir.xi1, scale * s.dir.xi2};
}

/// The closed-form spray as a callable, for the geodesic integrator and the
/// spray-based Riemann routine.
inline auto spray_fn(const DiscChart& chart) {
  return [chart](const auto& s) { return spray(chart, s); };
}

struct SprayDecomposition {
  Vec2<double> riemannian;  // 1/2 gamma^i_jk xi^j xi^k
  double P;                 // e00 / 2F - s0
  Vec2<double> Q;           // alpha s^i_0

  Vec2<double> total(const Tangent2& xi) const {
    return {riemannian[0] + P * xi.xi1 + Q[0], riemannian[1] + P * xi.xi2 + Q[1]};
  }
};

/// G^i = Gbar^i + P xi^i + Q^i assembled from the covariant data.
inline SprayDecomposition spray_decomposition(const DiscChart& chart, const TangentSample& s) {
  const CovariantData c = covariant_b(chart, s.base);
  SprayDecomposition d{};
  for (int i = 0; i < 2; ++i) {
    double v = 0.0;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) v += c.gamma[i][j][k] * s.dir[j] * s.dir[k];
    d.riemannian[i] = 0.5 * v;
  }
  const double f = eval_F(chart, s);
  d.P = c.e00(s.dir) / (2.0 * f) - c.s0(s.dir);
  const double alpha = eval_alpha(chart, s);
  const Vec2<double> s0 = c.s_up0(s.dir);
  d.Q = {alpha * s0[0], alpha * s0[1]};
  return d;
}

/// Closed-form S-curvature (Busemann-Hausdorff volume):
/// S = 3 w (u Y - 2 eps p^2) / (2 F D u^2) + 3 p w^2 (1 - eps q) / (D (1 - eps^2 r^2 q) u).
template <class T>
T s_curvature(const DiscChart& chart, const BasicTangentSample<T>& s) {
  const double eps = chart.epsilon();
  const double w = 1.0 + eps * chart.r_sq();
  const T f = eval_F(chart, s);
  const T q = norm_sq(s.base);
  const T p = dot(s.base, s.dir);
  const T u = 1.0 + eps * q;
  const T d = chart.r_sq() - q;
  return 3.0 * w * (u * norm_sq(s.dir) - 2.0 * eps * p * p) / (2.0 * f * d * u * u) +
         3.0 * p * w * w * (1.0 - eps * q) / (d * (1.0 - eps * eps * chart.r_sq() * q) * u);
}

/// S = (n + 1) [e00 / 2F - (s0 + rho0)] with n = 2, from the covariant data.
inline double s_curvature_randers(const DiscChart& chart, const TangentSample& s) {
  const CovariantData c = covariant_b(chart, s.base);
  const double f = eval_F(chart, s);
  return 3.0 * (c.e00(s.dir) / (2.0 * f) - (c.s0(s.dir) + c.rho0(s.dir)));
}

struct CurvatureReport {
  CovariantData covariant;
  double F;
  double alpha;
  Vec2<double> G;
  double S;
  Mat2<double> R;  // R(i, k) = R^i_k
  double ric;
  double K;
  double phi;
  double psi;
  Vec2<double> tau;
  double s_gap;  // S - 3/2 F
  double k_gap;  // K + 1/4
  // Closed forms of psi: with (1 + eps q) in the first bracket, and the
  // alternative with (1 + q). Only the former agrees with the pipeline for
  // every eps; both are reported so the comparison is visible.
  double psi_closed;
  double psi_alt;
};

/// phi = w (u Y - 2 eps p^2) / (D u^2).
inline double phi_closed(const DiscChart& chart, const TangentSample& s) {
  const double eps = chart.epsilon();
  const double q = norm_sq(s.base);
  const double p = dot(s.base, s.dir);
  const double u = 1.0 + eps * q;
  return (1.0 + eps * chart.r_sq()) * (u * norm_sq(s.dir) - 2.0 * eps * p * p) / ((chart.r_sq() - q) * u * u);
}

inline double psi_closed_form(const DiscChart& chart, const TangentSample& s, bool eps_weighted = true) {
  const double eps = chart.epsilon();
  const double r2 = chart.r_sq();
  const double q = norm_sq(s.base);
  const double p = dot(s.base, s.dir);
  const double u = 1.0 + eps * q;
  const double d = r2 - q;
  const double lead = eps_weighted ? u : 1.0 + q;
  return -2.0 * (1.0 + eps * r2) * p / (u * u * u * d * d) *
         (lead * norm_sq(s.dir) * (3.0 * eps * r2 - 2.0 * eps * q + 1.0) -
          2.0 * eps * p * p * (1.0 - eps * q + 2.0 * eps * r2));
}

/// tau_k = w (x^k Y - xi^k p) / (F D^2 u).
inline Vec2<double> tau_closed(const DiscChart& chart, const TangentSample& s) {
  const double eps = chart.epsilon();
  const double q = norm_sq(s.base);
  const double p = dot(s.base, s.dir);
  const double y = norm_sq(s.dir);
  const double d = chart.r_sq() - q;
  const double k = (1.0 + eps * chart.r_sq()) / (eval_F(chart, s) * d * d * (1.0 + eps * q));
  return {k * (s.base.x1 * y - s.dir.xi1 * p), k * (s.base.x2 * y - s.dir.xi2 * p)};
}

/// Simplified S - 3/2 F:
/// 3 eps [Q^2 + eps D w u (p^2 - q Y)] / (2 u (1 - eps^2 r^2 q) Q).
inline double s_gap_simplified(const DiscChart& chart, const TangentSample& s) {
  const double eps = chart.epsilon();
  const double r2 = chart.r_sq();
  const double q = norm_sq(s.base);
  const double p = dot(s.base, s.dir);
  const double y = norm_sq(s.dir);
  const double d = r2 - q;
  const double u = 1.0 + eps * q;
  const double w = 1.0 + eps * r2;
  const double a = std::sqrt(d * y + p * p);
  const double big_q = u * a + w * p;
  return 1.5 * eps * (big_q * big_q + eps * d * w * u * (p * p - q * y)) / (u * (1.0 - eps * eps * r2 * q) * big_q);
}

/// Simplified K + 1/4:
/// 3 eps D^2 (u Y - eps p^2) [u (u + w) A^2 + 4 u w p A + w (u + w) p^2] / (4 Q^4).
///
/// The bracket is a positive definite form in (A, p) whenever u, w > 0
/// (its discriminant is -4uw(u - w)^2), so the sign is the sign of eps.
inline double k_gap_simplified(const DiscChart& chart, const TangentSample& s) {
  const double eps = chart.epsilon();
  const double r2 = chart.r_sq();
  const double q = norm_sq(s.base);
  const double p = dot(s.base, s.dir);
  const double y = norm_sq(s.dir);
  const double d = r2 - q;
  const double u = 1.0 + eps * q;
  const double w = 1.0 + eps * r2;
  const double a = std::sqrt(d * y + p * p);
  const double big_q = u * a + w * p;
  const double q2 = big_q * big_q;
  const double bracket = u * (u + w) * a * a + 4.0 * u * w * p * a + w * (u + w) * p * p;
  return 3.0 * eps * d * d * (u * y - eps * p * p) * bracket / (4.0 * q2 * q2);
}

/// Riemann curvature of F = alpha + beta with closed beta:
/// R^i_k = -(delta^i_k alpha^2 - alpha alpha_k xi^i)
///         + [3 (phi / 2F)^2 - psi / 2F] (delta^i_k - F_k xi^i / F) + tau_k xi^i,
/// where the first term is the curvature -1 Riemann tensor of alpha,
/// phi = b_{i|j} xi^i xi^j, psi = b_{i|j|k} xi^i xi^j xi^k and
/// tau_k = (b_{i|j|k} - b_{i|k|j}) xi^i xi^j / F.
inline CurvatureReport riemann(const DiscChart& chart, const TangentSample& s) {
  require_valid(chart, s);
  CurvatureReport rep{};
  rep.covariant = covariant_b(chart, s.base);
  const CovariantData& c = rep.covariant;
  const Tangent2& xi = s.dir;

  rep.alpha = eval_alpha(chart, s);
  rep.F = eval_F(chart, s);
  auto alpha_fn = [&chart](const auto& w) { return eval_alpha(chart, w); };
  auto f_fn = [&chart](const auto& w) { return eval_F(chart, w); };
  const Vec2<double> alpha_k{partial(alpha_fn, s, 2), partial(alpha_fn, s, 3)};
  const Vec2<double> f_k{partial(f_fn, s, 2), partial(f_fn, s, 3)};

  rep.phi = CovariantData::quad(c.b_cov, xi);
  rep.psi = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) rep.psi += c.b_cov2[i][j][k] * xi[i] * xi[j] * xi[k];
  for (int k = 0; k < 2; ++k) {
    double t = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t += (c.b_cov2[i][j][k] - c.b_cov2[i][k][j]) * xi[i] * xi[j];
    rep.tau[k] = t / rep.F;
  }

  const double f = rep.F;
  const double lambda = 3.0 * (rep.phi / (2.0 * f)) * (rep.phi / (2.0 * f)) - rep.psi / (2.0 * f);
  const double a2 = rep.alpha * rep.alpha;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      const double delta = i == k ? 1.0 : 0.0;
      rep.R(i, k) = -(delta * a2 - rep.alpha * alpha_k[k] * xi[i]) + lambda * (delta - f_k[k] * xi[i] / f) +
                    rep.tau[k] * xi[i];
    }
  rep.ric = trace(rep.R);
  rep.K = rep.ric / (f * f);
  rep.G = spray(chart, s);
  rep.S = s_curvature(chart, s);
  rep.s_gap = rep.S - 1.5 * f;
  rep.k_gap = rep.K + 0.25;
  rep.psi_closed = psi_closed_form(chart, s, true);
  rep.psi_alt = psi_closed_form(chart, s, false);
  return rep;
}

inline double flag_curvature(const DiscChart& chart, const TangentSample& s) { return riemann(chart, s).K; }

struct BoundGaps {
  double s_gap;             // S - 3/2 F by subtraction
  double k_gap;             // K + 1/4 by subtraction
  double s_gap_simplified;  // factored closed form
  double k_gap_simplified;
};

inline BoundGaps bound_gaps(const DiscChart& chart, const TangentSample& s) {
  const CurvatureReport rep = riemann(chart, s);
  return {rep.s_gap, rep.k_gap, s_gap_simplified(chart, s), k_gap_simplified(chart, s)};
}

struct Classification {
  bool douglas;
  bool berwald;
  bool projectively_flat;
  double max_s;                   // max |s_ij| over the samples
  double max_projective_residual; // max |G^1 xi^2 - G^2 xi^1| / (|G| |xi|)
  Point2 witness;                 // first grid point with max |b_{i|j}| > kBerwaldThreshold
  double witness_b_cov;           // max |b_{i|j}| at the witness
  std::size_t samples;

  static constexpr double kDouglasTolerance = 1e-10;
  static constexpr double kBerwaldThreshold = 0.1;
  static constexpr double kProjectiveTolerance = 1e-10;
};

/// Numerical Douglas / Berwald / projective-flatness classification on a
/// 32 x 32 polar grid (|x| <= 0.95 r, origin first) x 16 directions plus
/// 1000 seeded random samples.
inline Classification classify(const DiscChart& chart, std::uint64_t seed = 20240101) {
  std::vector<TangentSample> samples;
  const auto grid = polar_grid(chart, 32, 32);
  const auto dirs = circle_directions(16);
  for (const Point2& x : grid)
    for (const Tangent2& xi : dirs) samples.push_back({x, xi});
  SampleStream rng(seed);
  for (int n = 0; n < 1000; ++n) samples.push_back(rng.sample(chart));

  Classification out{};
  out.samples = samples.size();
  bool have_witness = false;
  for (const TangentSample& s : samples) {
    const CovariantData c = covariant_b(chart, s.base);
    out.max_s = std::max(out.max_s, max_abs(c.s));
    const double bmax = max_abs(c.b_cov);
    if (!have_witness && bmax > Classification::kBerwaldThreshold) {
      have_witness = true;
      out.witness = s.base;
      out.witness_b_cov = bmax;
    }
    const Vec2<double> g = spray(chart, s);
    const double scale = std::hypot(g[0], g[1]) * norm(s.dir);
    if (scale > 0.0)
      out.max_projective_residual =
          std::max(out.max_projective_residual, std::abs(g[0] * s.dir.xi2 - g[1] * s.dir.xi1) / scale);
  }
  out.douglas = out.max_s <= Classification::kDouglasTolerance;
  out.berwald = !have_witness;
  out.projectively_flat = out.max_projective_residual <= Classification::kProjectiveTolerance;
  return out;
}

}  // namespace funkfinsler
