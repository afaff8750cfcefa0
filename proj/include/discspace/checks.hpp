#ifndef DISCSPACE_CHECKS_HPP
#define DISCSPACE_CHECKS_HPP

// Identity and inequality suites run by `discspace check`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <discspace/core.hpp>
#include <discspace/corpus.hpp>
#include <discspace/func.hpp>
#include <discspace/geometry.hpp>
#include <discspace/quadrature.hpp>

namespace discspace {

/// For identity suites `worst` is the largest residual and the suite passes
/// when worst <= threshold. For inequality suites `worst` is the smallest
/// margin and the suite passes when there are no violations.
struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  double worst = 0.0;
  double threshold = 0.0;
  std::size_t violations = 0;
  bool pass = false;
};

struct CheckConfig {
  std::uint64_t seed = 7;
  int n_r = kDefaultRadialNodes;
  int n_t = kDefaultAngularNodes;
  std::size_t lp_polynomials = 100;
  std::size_t blaschke_sets = 50;
  std::size_t blaschke_size = 10;
  std::size_t mobius_pairs = 1000;
  std::size_t mean_value_polynomials = 500;
  std::vector<double> radii{0.1, 0.25, 0.5, 0.75, 0.9, 0.99};
};

namespace detail {

inline SuiteResult identity_suite(std::string name, double threshold, const std::vector<double>& residuals) {
  SuiteResult r{std::move(name), residuals.size(), 0.0, threshold, 0, false};
  for (double x : residuals) {
    r.worst = std::max(r.worst, x);
    if (!(x <= threshold)) ++r.violations;
  }
  r.pass = r.violations == 0;
  return r;
}

inline SuiteResult inequality_suite(std::string name, const std::vector<double>& margins) {
  SuiteResult r{std::move(name), margins.size(), margins.empty() ? 0.0 : margins.front(), 0.0, 0, false};
  for (double m : margins) {
    r.worst = std::min(r.worst, m);
    if (!(m >= 0.0)) ++r.violations;
  }
  r.pass = r.violations == 0;
  return r;
}

} // namespace detail

/// |f(0)|^2 + 2 int |f'|^2 log(1/|z|) dA against sum |a_k|^2, for z^k
/// (k = 1..8) and random polynomials of degree <= 10.
inline SuiteResult check_littlewood_paley(const CheckConfig& cfg) {
  const auto rule = log_disc_rule(cfg.n_r, cfg.n_t);
  std::vector<std::vector<complex>> polys;
  for (int k = 1; k <= 8; ++k) {
    std::vector<complex> c(k + 1, 0.0);
    c[k] = 1.0;
    polys.push_back(std::move(c));
  }
  Rng rng(cfg.seed);
  for (auto& c : random_coefficients(rng, cfg.lp_polynomials, 10)) polys.push_back(std::move(c));

  std::vector<double> res;
  for (const auto& c : polys) {
    const auto fp = primitive_of(polynomial(c));
    double parseval = 0.0;
    for (const auto& a : c) parseval += std::norm(a);
    const double lp = std::norm(fp.value_at_zero) +
                      integrate(rule, [&](complex z) { return std::norm(eval(fp.derivative, z)); });
    res.push_back(std::abs(lp - parseval));
  }
  return detail::identity_suite("littlewood-paley", 1e-6, res);
}

/// (1 - |z_n|^2)|B'(z_n)| against prod_{k != n} rho(z_n, z_k).
inline SuiteResult check_blaschke_identity(const CheckConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<double> res;
  for (const auto& zs : random_zero_sets(rng, cfg.blaschke_sets, cfg.blaschke_size, 0.95)) {
    const Func b = blaschke_from_zeros(zs);
    const auto defects = thinness_defects(zs);
    for (std::size_t n = 0; n < zs.size(); ++n) {
      const complex z = zs[n].value();
      res.push_back(std::abs(one_minus_abs2(z) * std::abs(deriv_eval(b, z)) - defects[n]));
    }
  }
  return detail::identity_suite("blaschke-identity", 1e-12, res);
}

/// (1 - |z|^2)|B'(z)| <= 1 at random interior points of random Blaschke products.
inline SuiteResult check_schwarz_pick(const CheckConfig& cfg) {
  Rng rng(cfg.seed + 1);
  std::vector<double> res;
  for (const auto& zs : random_zero_sets(rng, cfg.blaschke_sets, cfg.blaschke_size, 0.95)) {
    const Func b = blaschke_from_zeros(zs);
    for (int i = 0; i < 20; ++i) {
      const complex z = rng.in_disc(0.999);
      res.push_back(std::max(0.0, one_minus_abs2(z) * std::abs(deriv_eval(b, z)) - 1.0));
    }
  }
  return detail::identity_suite("schwarz-pick", 1e-12, res);
}

/// sigma_a(sigma_a(z)) = z.
inline SuiteResult check_mobius_involution(const CheckConfig& cfg) {
  Rng rng(cfg.seed + 2);
  std::vector<double> res;
  for (std::size_t i = 0; i < cfg.mobius_pairs; ++i) {
    const DiscPoint a(rng.in_disc(0.95));
    const complex z = rng.in_disc(0.95);
    res.push_back(std::abs(mobius_eval(a, mobius_eval(a, z)) - z));
  }
  return detail::identity_suite("mobius-involution", 1e-12, res);
}

/// |f(0)|^2 <= circle means at every tested radius and <= the plain area mean.
inline SuiteResult check_mean_value(const CheckConfig& cfg) {
  CorpusConfig cc;
  cc.seed = cfg.seed;
  cc.size = cfg.mean_value_polynomials;
  const auto corpus = polynomial_corpus(cc);
  const auto area = disc_rule(cfg.n_r, cfg.n_t);
  std::vector<double> margins;
  for (const auto& f : corpus) {
    const double f0 = std::norm(eval(f, 0.0));
    for (double r : cfg.radii) margins.push_back(circle_mean(f, r, 64) - f0);
    margins.push_back(integrate(area, [&](complex z) { return std::norm(eval(f, z)); }) - f0);
  }
  return detail::inequality_suite("mean-value", margins);
}

/// |f(0)|^2 <= int |f|^2 2 log(1/|z|) dA.
inline SuiteResult check_log_mean_value(const CheckConfig& cfg) {
  CorpusConfig cc;
  cc.seed = cfg.seed;
  cc.size = cfg.mean_value_polynomials;
  const auto corpus = polynomial_corpus(cc);
  const auto rule = log_disc_rule(cfg.n_r, cfg.n_t);
  std::vector<double> margins;
  for (const auto& f : corpus) {
    margins.push_back(integrate(rule, [&](complex z) { return std::norm(eval(f, z)); }) - std::norm(eval(f, 0.0)));
  }
  return detail::inequality_suite("log-mean-value", margins);
}

inline std::vector<SuiteResult> run_checks(const CheckConfig& cfg = {}) {
  return {check_littlewood_paley(cfg), check_blaschke_identity(cfg), check_schwarz_pick(cfg),
          check_mobius_involution(cfg), check_mean_value(cfg),     check_log_mean_value(cfg)};
}

} // namespace discspace

#endif
