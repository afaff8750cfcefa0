#ifndef DISCSPACE_SPACES_HPP
#define DISCSPACE_SPACES_HPP

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include <discspace/core.hpp>
#include <discspace/func.hpp>
#include <discspace/quadrature.hpp>
#include <discspace/search.hpp>

namespace discspace {

enum class Method { closed_form, quadrature, grid_search };

inline const char* to_string(Method m) {
  switch (m) {
  case Method::closed_form: return "closed-form";
  case Method::quadrature: return "quadrature";
  case Method::grid_search: return "grid-search";
  }
  return "?";
}

/// Result of a norm computation.
///
/// For Bloch and BMOA, value = |f(0)| + seminorm; for Dirichlet and H²,
/// value² = |f(0)|² + seminorm²; for Bergman, value = seminorm. Sup-type
/// norms also carry the unrefined grid value and the arg-sup.
struct NormReport {
  double value = 0.0;
  double seminorm = 0.0;
  Method method = Method::quadrature;
  std::optional<complex> witness;
  double est_error = 0.0;
  std::optional<double> grid_seminorm;
  bool hit_truncation = false;
  std::optional<double> parseval;  // H² only, when the derivative is a polynomial
};

/// BMOA search over the Möbius parameter a: a coarse polar grid with
/// |a| <= truncation, then chart refinement.
struct BmoaConfig {
  SearchConfig search{.radii = 8, .angles = 16, .max_radius = 0.95, .tol = 1e-4, .refine_top = 2,
                      .initial_step = 0.5};
  double truncation = 0.95;
};

namespace detail {

inline void require_kind(const QuadratureRule& rule, RuleKind kind, const char* who) {
  if (rule.kind != kind) {
    throw invalid_parameter(std::string(who) + " needs a " + to_string(kind) + " rule, got " +
                            to_string(rule.kind));
  }
}

inline std::vector<complex> as_complex(std::span<const DiscPoint> pts) {
  std::vector<complex> out;
  for (const auto& p : pts) out.push_back(p.value());
  return out;
}

} // namespace detail

/// (1 - |z|^2) |f'(z)|, the quantity whose sup is the Bloch seminorm.
inline double bloch_density(const PrimitivePair& fp, complex z) {
  return one_minus_abs2(z) * std::abs(eval(fp.derivative, z));
}

/// |f(0)| + sup (1 - |z|^2)|f'(z)| by grid search and chart refinement.
/// `hints` seeds the search with known peak locations (e.g. Blaschke zeros
/// too close to the circle for the grid to see).
inline NormReport bloch_norm(const PrimitivePair& fp, const SearchConfig& cfg = {},
                             std::span<const complex> hints = {}) {
  const auto sup = sup_on_disc([&](complex z) { return bloch_density(fp, z); }, cfg, hints, 1.0);
  NormReport r;
  r.method = Method::grid_search;
  r.seminorm = sup.value;
  r.value = std::abs(fp.value_at_zero) + sup.value;
  r.witness = sup.witness;
  r.grid_seminorm = sup.grid_value;
  r.est_error = std::abs(sup.last_gain);
  return r;
}

/// m(r) = max_{|z| = r} (1 - r^2)|f'(z)| for each radius. Tends to 0 as
/// r -> 1 exactly when f is in the little Bloch space.
inline std::vector<double> little_bloch_profile(const PrimitivePair& fp, std::span<const double> radii,
                                                int samples = 2048) {
  std::vector<double> out;
  double prev = 0.0;
  for (double r : radii) {
    if (!(r > prev && r < 1.0)) throw invalid_parameter("little_bloch_profile: radii must increase within (0, 1)");
    prev = r;
    const auto s = sup_on_circle([&](complex u) { return bloch_density(fp, r * u); }, samples, 1e-12);
    out.push_back(s.value);
  }
  return out;
}

/// (|f(0)|^2 + int |f'|^2 dA)^{1/2}.
inline NormReport dirichlet_norm(const PrimitivePair& fp, const QuadratureRule& rule) {
  detail::require_kind(rule, RuleKind::plain_area, "dirichlet_norm");
  auto energy = [&](const QuadratureRule& q) {
    return integrate(q, [&](complex z) { return std::norm(eval(fp.derivative, z)); });
  };
  const double f0 = std::norm(fp.value_at_zero);
  const double e = energy(rule);
  NormReport r;
  r.seminorm = std::sqrt(std::max(e, 0.0));
  r.value = std::sqrt(f0 + std::max(e, 0.0));
  r.est_error = std::abs(r.value - std::sqrt(f0 + std::max(energy(coarsened(rule)), 0.0)));
  return r;
}

/// (int |f|^2 dA)^{1/2}.
inline NormReport bergman_norm(const Func& f, const QuadratureRule& rule) {
  detail::require_kind(rule, RuleKind::plain_area, "bergman_norm");
  auto mass = [&](const QuadratureRule& q) {
    return integrate(q, [&](complex z) { return std::norm(eval(f, z)); });
  };
  NormReport r;
  r.value = r.seminorm = std::sqrt(std::max(mass(rule), 0.0));
  r.est_error = std::abs(r.value - std::sqrt(std::max(mass(coarsened(rule)), 0.0)));
  return r;
}

/// Littlewood-Paley form |f(0)|^2 + 2 int |f'|^2 log(1/|z|) dA.
inline NormReport h2_norm(const PrimitivePair& fp, const QuadratureRule& rule) {
  detail::require_kind(rule, RuleKind::log_weighted, "h2_norm");
  auto lp = [&](const QuadratureRule& q) {
    return integrate(q, [&](complex z) { return std::norm(eval(fp.derivative, z)); });
  };
  const double f0 = std::norm(fp.value_at_zero);
  const double e = std::max(lp(rule), 0.0);
  NormReport r;
  r.seminorm = std::sqrt(e);
  r.value = std::sqrt(f0 + e);
  r.est_error = std::abs(r.value - std::sqrt(f0 + std::max(lp(coarsened(rule)), 0.0)));
  if (auto c = polynomial_coefficients(fp.derivative)) {
    // f = f(0) + sum c_k z^{k+1} / (k+1)
    double s = f0;
    for (std::size_t k = 0; k < c->size(); ++k) s += std::norm((*c)[k]) / double((k + 1) * (k + 1));
    r.parseval = std::sqrt(s);
  }
  return r;
}

/// ‖f∘σ_a − f(a)‖_{H²} through the substituted Littlewood-Paley integral
/// 2 int |f'(σ_a(w))|^2 |σ_a'(w)|^2 log(1/|w|) dA(w).
inline double bmoa_slice(const PrimitivePair& fp, complex a, const QuadratureRule& rule) {
  const complex ac = std::conj(a);
  const double scale = one_minus_abs2(a);
  const double v = integrate(rule, [&](complex w) {
    const complex den = 1.0 - ac * w;
    const complex z = (a - w) / den;
    const complex dsigma = -scale / (den * den);
    return std::norm(eval(fp.derivative, z) * dsigma);
  });
  return std::sqrt(std::max(v, 0.0));
}

/// |f(0)| + sup_a ‖f∘σ_a − f(a)‖_{H²} over |a| <= truncation. The a = 0
/// slice is always part of the grid.
inline NormReport bmoa_norm(const PrimitivePair& fp, const QuadratureRule& rule,
                            const BmoaConfig& cfg = {}, std::span<const complex> hints = {}) {
  detail::require_kind(rule, RuleKind::log_weighted, "bmoa_norm");
  const auto sup =
      sup_on_disc([&](complex a) { return bmoa_slice(fp, a, rule); }, cfg.search, hints, cfg.truncation);
  NormReport r;
  r.method = Method::quadrature;
  r.seminorm = sup.value;
  r.value = std::abs(fp.value_at_zero) + sup.value;
  r.witness = sup.witness;
  r.grid_seminorm = sup.grid_value;
  r.hit_truncation = sup.hit_truncation;
  r.est_error = std::abs(sup.last_gain) + std::abs(sup.value - bmoa_slice(fp, sup.witness, coarsened(rule)));
  return r;
}

} // namespace discspace

#endif
