#ifndef DISCSPACE_OPERATORS_HPP
#define DISCSPACE_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <discspace/core.hpp>
#include <discspace/func.hpp>
#include <discspace/geometry.hpp>
#include <discspace/quadrature.hpp>
#include <discspace/search.hpp>
#include <discspace/spaces.hpp>

namespace discspace {

// --- the operators ---------------------------------------------------------

/// S_g f = int_0^z f'(w) g(w) dw, as the pair (0, f' g).
inline PrimitivePair apply_Sg(const Func& g, const PrimitivePair& fp) {
  return {0.0, product(fp.derivative, g)};
}

/// T_g f = int_0^z f(w) g'(w) dw, as the pair (0, f g').
inline PrimitivePair apply_Tg(const Func& g, const Func& f) { return {0.0, product(f, differentiate(g))}; }

// --- closed-form operator norms ----------------------------------------------

/// sup over the closed disc of a modulus, located on the circle by the
/// maximum-modulus principle.
struct BoundarySup {
  double value = 0.0;
  complex argmax{1.0, 0.0};
  std::vector<std::string> warnings;
};

inline constexpr int kBoundarySamples = 4096;

/// ‖S_g‖ = sup|g|, the same value on the Bloch, Dirichlet and BMOA spaces.
inline BoundarySup opnorm_exact_Sg(const Func& g, int samples = kBoundarySamples) {
  const auto s = sup_on_circle([&](complex u) { return std::abs(eval(g, u)); }, samples);
  return {s.value, s.point, {}};
}

/// ‖T_g : A² → D‖ = sup|g'|.
inline BoundarySup opnorm_exact_Tg(const Func& g, int samples = kBoundarySamples) {
  const auto s = sup_on_circle([&](complex u) { return std::abs(deriv_eval(g, u)); }, samples);
  BoundarySup out{s.value, s.point, {}};
  for (const auto& z : blaschke_zeros(g)) {
    if (z.modulus() > 0.99) {
      out.warnings.push_back("Blaschke zero " + to_string(z.value()) +
                             " has modulus > 0.99; boundary sampling of g' may under-resolve");
    }
  }
  return out;
}

/// Exact norm, best witnessed value and the gap between them.
struct OpNormEstimate {
  double exact = 0.0;
  double lower = 0.0;
  std::optional<complex> witness_point;
  std::string witness;
  double gap = 0.0;
  double est_error = 0.0;
};

// --- lower bounds ------------------------------------------------------------

struct DirichletLowerBound {
  double bound = 0.0;       // |g(a)|
  double quadrature = 0.0;  // ‖S_g f_a‖_D
};

/// ‖S_g f_a‖_D = (int |g∘σ_a|^2 dA)^{1/2} >= |g(a)| for the unit test function f_a.
inline DirichletLowerBound sg_lower_bound_dirichlet(const Func& g, DiscPoint a, const QuadratureRule& rule) {
  const auto fa = primitive_of(test_bloch_family(a));
  return {std::abs(eval(g, a.value())), dirichlet_norm(apply_Sg(g, fa), rule).value};
}

/// (1 - |a|^2)|f'(a)||g(a)|, a quadrature-free lower bound for the BMOA
/// seminorm of S_g f (the a-slice dominates its value at the origin).
inline double sg_lower_bound_bmoa(const Func& g, const PrimitivePair& fp, DiscPoint a) {
  const complex z = a.value();
  return one_minus_abs2(z) * std::abs(eval(fp.derivative, z)) * std::abs(eval(g, z));
}

/// Witness families f_a (unit norm in Bloch, Dirichlet and BMOA) over the
/// given a-points.
enum class SgSpace { bloch, dirichlet, bmoa };

inline OpNormEstimate estimate_Sg(const Func& g, SgSpace space, std::span<const DiscPoint> a_points,
                                  const QuadratureRule& rule, const SearchConfig& search = {}) {
  OpNormEstimate est;
  est.exact = opnorm_exact_Sg(g).value;
  est.lower = -1.0;
  for (const auto& a : a_points) {
    const auto fa = primitive_of(test_bloch_family(a));
    double v = 0.0, err = 0.0;
    switch (space) {
    case SgSpace::bloch: {
      const complex hint[] = {a.value()};
      const auto r = bloch_norm(apply_Sg(g, fa), search, hint);
      v = r.seminorm;
      err = r.est_error;
      break;
    }
    case SgSpace::dirichlet: {
      const auto r = dirichlet_norm(apply_Sg(g, fa), rule);
      v = r.value;
      err = r.est_error;
      break;
    }
    case SgSpace::bmoa:
      // The a-slice alone is a lower bound for the sup over slices.
      v = bmoa_slice(apply_Sg(g, fa), a.value(), rule);
      err = std::abs(v - bmoa_slice(apply_Sg(g, fa), a.value(), coarsened(rule)));
      break;
    }
    if (v > est.lower) {
      est.lower = v;
      est.witness_point = a.value();
      est.witness = "f_a, a=" + to_string(a.value());
      est.est_error = err;
    }
  }
  est.lower = std::max(est.lower, 0.0);
  est.gap = est.exact - est.lower;
  return est;
}

/// ‖T_g F_a‖_D over unit Bergman kernels F_a; each value is >= |g'(a)|.
inline OpNormEstimate estimate_Tg(const Func& g, std::span<const DiscPoint> a_points, const QuadratureRule& rule) {
  OpNormEstimate est;
  est.exact = opnorm_exact_Tg(g).value;
  est.lower = -1.0;
  for (const auto& a : a_points) {
    const auto r = dirichlet_norm(apply_Tg(g, bergman_kernel_unit(a)), rule);
    if (r.value > est.lower) {
      est.lower = r.value;
      est.witness_point = a.value();
      est.witness = "F_a, a=" + to_string(a.value());
      est.est_error = r.est_error;
    }
  }
  est.lower = std::max(est.lower, 0.0);
  est.gap = est.exact - est.lower;
  return est;
}

// --- Dirichlet non-attainment ------------------------------------------------

/// Δ(f) = ‖S_g‖^2 - ‖S_g f‖_D^2 for f scaled to unit Dirichlet norm, written as
/// ‖S_g‖^2 |f(0)|^2 + int |f'|^2 (‖S_g‖^2 - |g|^2) dA.
inline double dirichlet_deficiency(const Func& g, const PrimitivePair& fp, const QuadratureRule& rule,
                                   std::optional<double> sg_norm = std::nullopt) {
  detail::require_kind(rule, RuleKind::plain_area, "dirichlet_deficiency");
  const double s2 = std::pow(sg_norm ? *sg_norm : opnorm_exact_Sg(g).value, 2);
  const double n2 = std::pow(dirichlet_norm(fp, rule).value, 2);
  if (!(n2 > 0.0)) throw invalid_parameter("dirichlet_deficiency: f has zero Dirichlet norm");
  const double integral = integrate(rule, [&](complex z) {
    return std::norm(eval(fp.derivative, z)) * (s2 - std::norm(eval(g, z)));
  });
  return (s2 * std::norm(fp.value_at_zero) + integral) / n2;
}

// --- extremal constructions ----------------------------------------------------

struct ExtremalConfig {
  double target_defect = 0.5;
  int max_exponent = 30;  // candidate radii 1 - 2^{-n}, n = 1..max_exponent
  std::vector<double> radii;  // explicit candidate radii; replaces the 1 - 2^{-n} march when set
  SearchConfig bloch{};
  BmoaConfig bmoa{};
};

struct ZeroDiagnostic {
  complex z;
  double density = 0.0;  // (1 - |z_n|^2)|h'(z_n)|
  double g_abs = 0.0;    // |g(z_n)|
};

struct ExtremalRecord {
  std::size_t requested = 0;
  ZeroSequence zeros;
  double exact = 0.0;
  double numerator = 0.0;    // ‖S_g h‖-type quantity before normalization
  double norm_of_h = 0.0;
  double lower_bound = 0.0;  // numerator / norm_of_h
  bool exhausted = false;    // fewer than `requested` zeros could be extracted
  bool constant_g = false;
  complex boundary_argmax{1.0, 0.0};
  std::vector<ZeroDiagnostic> diagnostics;
  ZeroSequence peaks;  // local maxima of (1 - |z|^2)|h'(z)| seeded at each zero
  PrimitivePair h{0.0, constant(0.0)};
  PrimitivePair h_unit{0.0, constant(0.0)};  // h / norm_of_h
};

namespace detail {

inline bool is_constant(const Func& g) { return opnorm_exact_Tg(g).value <= 1e-14; }

// Thin Blaschke zeros marching radially to the boundary arg-max of |g|.
inline ExtremalRecord build_extremal_candidate(const Func& g, std::size_t n, const ExtremalConfig& cfg) {
  if (n == 0) throw invalid_parameter("extremal construction needs N >= 1");
  ExtremalRecord rec;
  rec.requested = n;
  const auto sup = opnorm_exact_Sg(g);
  rec.exact = sup.value;
  rec.boundary_argmax = sup.argmax;
  rec.constant_g = is_constant(g);
  if (rec.constant_g) {
    rec.h = primitive_of(identity());
    return rec;
  }

  std::vector<DiscPoint> cands;
  if (cfg.radii.empty()) {
    for (int k = 1; k <= cfg.max_exponent; ++k) cands.emplace_back((1.0 - std::ldexp(1.0, -k)) * sup.argmax);
  } else {
    for (double r : cfg.radii) {
      if (!(r >= 0.0 && r < 1.0)) throw invalid_parameter("extremal candidate radii must lie in [0, 1)");
      cands.emplace_back(r * sup.argmax);
    }
  }
  rec.zeros = greedy_thin_subsequence(ZeroSequence(std::move(cands)), cfg.target_defect, n);
  rec.exhausted = rec.zeros.size() < n;

  const Func b = blaschke_from_zeros(rec.zeros);
  rec.h = primitive_of(shift(b, -eval(b, 0.0)));
  auto density = [&](complex z) { return bloch_density(rec.h, z); };
  std::vector<DiscPoint> peaks;
  for (const auto& z : rec.zeros) {
    const double d = density(z.value());
    rec.diagnostics.push_back({z.value(), d, std::abs(eval(g, z.value()))});
    const complex p = refine_in_chart(density, z.value(), d, cfg.bloch, 1.0).witness;
    if (std::none_of(peaks.begin(), peaks.end(), [&](const DiscPoint& q) { return q.value() == p; })) {
      peaks.emplace_back(p);
    }
  }
  rec.peaks = ZeroSequence(std::move(peaks));
  return rec;
}

inline void finish(ExtremalRecord& rec) {
  rec.lower_bound = rec.numerator / rec.norm_of_h;
  rec.h_unit = {rec.h.value_at_zero / rec.norm_of_h, scale(1.0 / rec.norm_of_h, rec.h.derivative)};
}

} // namespace detail

/// Bloch-space extremal candidate h = B - B(0) for a thin finite Blaschke
/// product B; lower_bound = ‖S_g h‖_B / ‖h‖_B.
inline ExtremalRecord extremal_bloch(const Func& g, std::size_t n, const ExtremalConfig& cfg = {}) {
  auto rec = detail::build_extremal_candidate(g, n, cfg);
  auto hints = detail::as_complex(rec.zeros.points());
  for (const auto& p : rec.peaks) hints.push_back(p.value());
  rec.norm_of_h = bloch_norm(rec.h, cfg.bloch, hints).value;
  rec.numerator = bloch_norm(apply_Sg(g, rec.h), cfg.bloch, hints).seminorm;
  detail::finish(rec);
  return rec;
}

/// BMOA extremal candidate; lower_bound = max_n (1-|z_n|^2)|h'(z_n)||g(z_n)|
/// divided by the computed ‖h‖_BMOA.
inline ExtremalRecord extremal_bmoa(const Func& g, std::size_t n, const QuadratureRule& rule,
                                    const ExtremalConfig& cfg = {}) {
  auto rec = detail::build_extremal_candidate(g, n, cfg);
  const auto hints = detail::as_complex(rec.zeros.points());
  rec.norm_of_h = bmoa_norm(rec.h, rule, cfg.bmoa, hints).value;
  if (rec.constant_g) {
    rec.numerator = sg_lower_bound_bmoa(g, rec.h, DiscPoint(0.0));
  } else {
    for (const auto& z : rec.zeros) rec.numerator = std::max(rec.numerator, sg_lower_bound_bmoa(g, rec.h, z));
  }
  detail::finish(rec);
  return rec;
}

struct TailTerm {
  complex z;
  double g_abs = 0.0;
  double density = 0.0;       // (1 - |z|^2)|f'(z)|
  double boundary_gap = 0.0;  // 1 - |z|
};

struct WitnessVerdict {
  bool accept = false;
  bool norm_ok = false;
  double bloch_norm = 0.0;
  double sup_g = 0.0;
  std::vector<TailTerm> tail;
  std::string reason;
};

/// Finite-N proxy for the extremal characterization on the Bloch space: the
/// last `tail` points of zs must sit within tol of the circle with |g| within
/// tol of sup|g| and (1 - |z|^2)|f'(z)| within tol of 1.
inline WitnessVerdict extremal_witness_check(const Func& g, const PrimitivePair& fp, const ZeroSequence& zs,
                                             double tol, std::size_t tail = 1, const SearchConfig& search = {}) {
  if (zs.empty()) throw degenerate_sequence("extremal_witness_check: empty sequence");
  WitnessVerdict v;
  v.sup_g = opnorm_exact_Sg(g).value;
  v.bloch_norm = bloch_norm(fp, search, detail::as_complex(zs.points())).value;
  v.norm_ok = std::abs(v.bloch_norm - 1.0) <= tol;

  bool near_boundary = true, g_ok = true, density_ok = true;
  for (std::size_t i = zs.size() - std::min(tail, zs.size()); i < zs.size(); ++i) {
    const complex z = zs[i].value();
    TailTerm t{z, std::abs(eval(g, z)), bloch_density(fp, z), 1.0 - std::abs(z)};
    near_boundary = near_boundary && t.boundary_gap <= tol;
    g_ok = g_ok && t.g_abs >= v.sup_g - tol;
    density_ok = density_ok && std::abs(t.density - 1.0) <= tol;
    v.tail.push_back(t);
  }
  v.accept = v.norm_ok && near_boundary && g_ok && density_ok;
  if (!v.norm_ok) v.reason = "f does not have unit Bloch norm";
  else if (!near_boundary) v.reason = "sequence does not approach the circle";
  else if (!g_ok) v.reason = "|g(z_n)| stays below sup|g|";
  else if (!density_ok) v.reason = "(1-|z_n|^2)|f'(z_n)| stays away from 1";
  else v.reason = "tail satisfies both limits";
  return v;
}

// --- T_g attainment ----------------------------------------------------------

struct KernelProbe {
  complex a;
  double bound = 0.0;  // |g'(a)|
  double value = 0.0;  // ‖T_g F_a‖_D
};

struct TgAttainmentReport {
  double exact = 0.0;
  bool affine = false;
  std::vector<double> tg_norms;      // ‖T_g f‖_D per corpus member
  std::vector<double> deficiencies;  // exact^2 - ‖T_g f‖_D^2
  double min_deficiency = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  std::optional<double> unit_witness_deficiency;  // f = 1, reported for affine g
  std::vector<KernelProbe> kernel_family;
};

/// Deficiencies of T_g : A² → D over a corpus of unit-Bergman functions,
/// plus the F_a lower-bound family at the given points.
inline TgAttainmentReport tg_attainment_experiment(const Func& g, std::span<const Func> corpus,
                                                   const QuadratureRule& rule,
                                                   std::span<const DiscPoint> kernel_points = {}) {
  TgAttainmentReport rep;
  rep.exact = opnorm_exact_Tg(g).value;
  const Func g2 = differentiate(differentiate(g));
  rep.affine = sup_on_circle([&](complex u) { return std::abs(eval(g2, u)); }).value <= 1e-12 * (1.0 + rep.exact);
  const double e2 = rep.exact * rep.exact;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const double n = dirichlet_norm(apply_Tg(g, corpus[i]), rule).value;
    rep.tg_norms.push_back(n);
    rep.deficiencies.push_back(e2 - n * n);
    if (rep.deficiencies.back() < rep.min_deficiency) {
      rep.min_deficiency = rep.deficiencies.back();
      rep.argmin = i;
    }
  }
  if (rep.affine) {
    const double n = dirichlet_norm(apply_Tg(g, constant(1.0)), rule).value;
    rep.unit_witness_deficiency = e2 - n * n;
  }
  for (const auto& a : kernel_points) {
    rep.kernel_family.push_back({a.value(), std::abs(deriv_eval(g, a.value())),
                                 dirichlet_norm(apply_Tg(g, bergman_kernel_unit(a)), rule).value});
  }
  return rep;
}

} // namespace discspace

#endif
