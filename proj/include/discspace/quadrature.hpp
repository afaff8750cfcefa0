#ifndef DISCSPACE_QUADRATURE_HPP
#define DISCSPACE_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <discspace/core.hpp>
#include <discspace/func.hpp>

namespace discspace {

enum class RuleKind { plain_area, log_weighted, circle };

inline const char* to_string(RuleKind k) {
  switch (k) {
  case RuleKind::plain_area: return "plain-area";
  case RuleKind::log_weighted: return "log-weighted";
  case RuleKind::circle: return "circle";
  }
  return "?";
}

/// Nodes and positive weights on the disc or on a circle. Weights are
/// normalized so that they sum to one for every kind:
///   plain_area    dA = dx dy / pi
///   log_weighted  2 log(1/|z|) dA
///   circle        d(theta) / 2pi on |z| = radius
struct QuadratureRule {
  std::vector<complex> nodes;
  std::vector<double> weights;
  RuleKind kind = RuleKind::plain_area;
  double radius = 1.0;
  int n_r = 0;
  int n_t = 0;

  std::size_t size() const noexcept { return nodes.size(); }
};

inline constexpr int kDefaultRadialNodes = 96;
inline constexpr int kDefaultAngularNodes = 256;

/// Gauss-Legendre nodes and weights on [lo, hi].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double lo, double hi) {
  std::vector<double> x(n), w(n);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (t * p1 - p0) / (t * t - 1.0);
    const double wt = 2.0 / ((1.0 - t * t) * dp * dp);
    x[i] = mid - half * t;
    x[n - 1 - i] = mid + half * t;
    w[i] = w[n - 1 - i] = half * wt;
  }
  return {std::move(x), std::move(w)};
}

namespace detail {

inline void require_sizes(int n_r, int n_t) {
  if (n_r < 2 || n_t < 4) {
    throw invalid_parameter("quadrature needs n_r >= 2 and n_t >= 4 (got " + std::to_string(n_r) +
                            ", " + std::to_string(n_t) + ")");
  }
}

// Tensor a radial rule (radii, weights already summing to one) with an
// n_t-point trapezoid in angle.
inline QuadratureRule tensor_rule(const std::vector<double>& radii, const std::vector<double>& rw,
                                  int n_t, RuleKind kind, int n_r) {
  QuadratureRule rule;
  rule.kind = kind;
  rule.n_r = n_r;
  rule.n_t = n_t;
  rule.nodes.reserve(radii.size() * n_t);
  rule.weights.reserve(radii.size() * n_t);
  std::vector<complex> dirs(n_t);
  for (int j = 0; j < n_t; ++j) dirs[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / n_t);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (int j = 0; j < n_t; ++j) {
      rule.nodes.push_back(radii[i] * dirs[j]);
      rule.weights.push_back(rw[i] / n_t);
    }
  }
  return rule;
}

} // namespace detail

/// Plain area rule for dA = dx dy / pi: Gauss-Legendre in r (weight 2 r dr)
/// times the trapezoid rule in angle.
inline QuadratureRule disc_rule(int n_r = kDefaultRadialNodes, int n_t = kDefaultAngularNodes) {
  detail::require_sizes(n_r, n_t);
  auto [r, w] = gauss_legendre(n_r, 0.0, 1.0);
  for (int i = 0; i < n_r; ++i) w[i] *= 2.0 * r[i];
  return detail::tensor_rule(r, w, n_t, RuleKind::plain_area, n_r);
}

/// Rule for 2 log(1/|z|) dA. The radial measure is 4 r log(1/r) dr. On
/// [1/2, 1] the weight is smooth and n_r Gauss-Legendre nodes are used. The
/// logarithmic singularity at the origin is absorbed by a geometric mesh
/// [2^{-j-2}, 2^{-j-1}], j = 0..23, on which every panel sits at a fixed
/// relative distance from r = 0, closed by one panel [0, 2^{-25}] so no
/// region is excluded.
inline QuadratureRule log_disc_rule(int n_r = kDefaultRadialNodes, int n_t = kDefaultAngularNodes) {
  detail::require_sizes(n_r, n_t);
  constexpr double split = 0.5;
  constexpr int panels = 24;

  std::vector<double> radii, rw;
  auto add_panel = [&](int n, double lo, double hi) {
    auto [r, w] = gauss_legendre(n, lo, hi);
    for (int i = 0; i < n; ++i) {
      radii.push_back(r[i]);
      rw.push_back(4.0 * r[i] * std::log(1.0 / r[i]) * w[i]);
    }
  };
  add_panel(n_r, split, 1.0);
  double hi = split;
  for (int j = 0; j < panels; ++j, hi *= 0.5) add_panel(j < 6 ? 8 : 5, 0.5 * hi, hi);
  add_panel(4, 0.0, hi);
  return detail::tensor_rule(radii, rw, n_t, RuleKind::log_weighted, n_r);
}

/// Normalized trapezoid rule on the circle |z| = r.
inline QuadratureRule circle_rule(double r, int n) {
  if (!(r > 0.0 && r < 1.0)) throw invalid_parameter("circle radius must lie in (0, 1)");
  if (n < 8) throw invalid_parameter("circle rule needs at least 8 nodes");
  QuadratureRule rule;
  rule.kind = RuleKind::circle;
  rule.radius = r;
  rule.n_t = n;
  for (int j = 0; j < n; ++j) {
    rule.nodes.push_back(std::polar(r, 2.0 * std::numbers::pi * j / n));
    rule.weights.push_back(1.0 / n);
  }
  return rule;
}

/// Rule of the same kind with halved resolution; used for error estimates.
inline QuadratureRule coarsened(const QuadratureRule& rule) {
  const int n_r = std::max(2, rule.n_r / 2), n_t = std::max(4, rule.n_t / 2);
  switch (rule.kind) {
  case RuleKind::plain_area: return disc_rule(n_r, n_t);
  case RuleKind::log_weighted: return log_disc_rule(n_r, n_t);
  case RuleKind::circle: return circle_rule(rule.radius, std::max(8, rule.n_t / 2));
  }
  return rule;
}

namespace detail {

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) noexcept {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double result() const noexcept { return sum + comp; }
};

[[noreturn]] inline void non_finite_at(std::size_t i, complex z) {
  throw numeric_failure("integrand is not finite at node " + std::to_string(i) + " " + to_string(z));
}

} // namespace detail

/// Sum of w_i * integrand(z_i) in node order with compensated summation.
/// The integrand may return double or complex.
template <typename F>
auto integrate(const QuadratureRule& rule, F&& integrand) {
  using R = std::decay_t<decltype(integrand(complex{}))>;
  if constexpr (std::is_same_v<R, complex>) {
    detail::CompensatedSum re, im;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const complex v = integrand(rule.nodes[i]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) detail::non_finite_at(i, rule.nodes[i]);
      re.add(rule.weights[i] * v.real());
      im.add(rule.weights[i] * v.imag());
    }
    return complex(re.result(), im.result());
  } else {
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = integrand(rule.nodes[i]);
      if (!std::isfinite(v)) detail::non_finite_at(i, rule.nodes[i]);
      acc.add(rule.weights[i] * v);
    }
    return acc.result();
  }
}

/// Trapezoid mean of |f|^2 over the circle of radius r.
inline double circle_mean(const Func& f, double r, int n) {
  return integrate(circle_rule(r, n), [&f](complex z) { return std::norm(eval(f, z)); });
}

} // namespace discspace

#endif
