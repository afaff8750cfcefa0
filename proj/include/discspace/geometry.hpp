#ifndef DISCSPACE_GEOMETRY_HPP
#define DISCSPACE_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <discspace/core.hpp>

namespace discspace {

/// A point of the open unit disc. Construction rejects |z| >= 1.
class DiscPoint {
public:
  DiscPoint() = default;

  DiscPoint(double re, double im = 0.0) : DiscPoint(complex(re, im)) {}

  DiscPoint(complex z) : z_(z) {
    if (!(std::abs(z) < 1.0)) {
      throw invalid_parameter("point " + to_string(z) + " is not inside the unit disc");
    }
  }

  complex value() const noexcept { return z_; }
  operator complex() const noexcept { return z_; }

  double re() const noexcept { return z_.real(); }
  double im() const noexcept { return z_.imag(); }
  double modulus() const noexcept { return std::abs(z_); }

  friend bool operator==(const DiscPoint&, const DiscPoint&) = default;

private:
  complex z_{0.0, 0.0};
};

/// Finite ordered list of distinct interior points.
class ZeroSequence {
public:
  ZeroSequence() = default;

  ZeroSequence(std::vector<DiscPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      for (std::size_t j = i + 1; j < points_.size(); ++j) {
        if (points_[i] == points_[j]) {
          throw degenerate_sequence("duplicate zero " + to_string(points_[i].value()) +
                                    " at positions " + std::to_string(i) + " and " +
                                    std::to_string(j));
        }
      }
    }
  }

  ZeroSequence(std::initializer_list<DiscPoint> points)
      : ZeroSequence(std::vector<DiscPoint>(points)) {}

  std::span<const DiscPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const DiscPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

private:
  std::vector<DiscPoint> points_;
};

namespace detail {

inline void require_closed_disc(complex z) {
  if (std::abs(z) > 1.0 + 1e-12) {
    throw invalid_parameter("evaluation point " + to_string(z) + " is outside the closed disc");
  }
}

} // namespace detail

/// The involutive automorphism (a - z) / (1 - conj(a) z). `z` may lie on the circle.
inline complex mobius_eval(DiscPoint a, complex z) {
  detail::require_closed_disc(z);
  const complex av = a.value();
  return (av - z) / (1.0 - std::conj(av) * z);
}

inline complex mobius_deriv(DiscPoint a, complex z) {
  detail::require_closed_disc(z);
  const complex av = a.value();
  const complex den = 1.0 - std::conj(av) * z;
  return -one_minus_abs2(av) / (den * den);
}

/// |u - v| / |1 - conj(u) v|, with the denominator taken from
/// |1 - conj(u) v|^2 = |u - v|^2 + (1 - |u|^2)(1 - |v|^2) so it stays accurate near the circle.
inline double pseudo_hyperbolic(DiscPoint u, DiscPoint v) noexcept {
  const double d = std::abs(u.value() - v.value());
  if (d == 0.0) return 0.0;
  const double den = std::sqrt(d * d + one_minus_abs2(u) * one_minus_abs2(v));
  return std::min(d / den, 1.0);
}

/// delta_k = prod_{j != k} rho(z_j, z_k). A singleton has defect 1.
inline std::vector<double> thinness_defects(const ZeroSequence& zs) {
  const std::size_t n = zs.size();
  std::vector<double> out(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) out[k] *= pseudo_hyperbolic(zs[j], zs[k]);
    }
  }
  return out;
}

inline double min_defect(const ZeroSequence& zs) {
  const auto d = thinness_defects(zs);
  return d.empty() ? 1.0 : *std::min_element(d.begin(), d.end());
}

/// Scans `candidates` in order and keeps a candidate only when the enlarged
/// subsequence still has every defect >= `target_defect`. Stops after `max_len` points.
inline ZeroSequence greedy_thin_subsequence(const ZeroSequence& candidates, double target_defect,
                                            std::size_t max_len) {
  if (candidates.empty()) throw degenerate_sequence("greedy_thin_subsequence: no candidates");
  if (!(target_defect > 0.0 && target_defect < 1.0)) {
    throw invalid_parameter("greedy_thin_subsequence: target defect must lie in (0, 1)");
  }
  if (max_len == 0) throw invalid_parameter("greedy_thin_subsequence: max_len must be positive");
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].modulus() < candidates[i - 1].modulus()) {
      throw invalid_parameter("greedy_thin_subsequence: candidate radii must be non-decreasing");
    }
  }

  std::vector<DiscPoint> kept;
  for (const auto& c : candidates) {
    if (kept.size() >= max_len) break;
    auto trial = kept;
    trial.push_back(c);
    // Re-verify with the same routine callers use, so the guarantee holds bit-for-bit.
    if (min_defect(ZeroSequence(trial)) >= target_defect) kept = std::move(trial);
  }
  return ZeroSequence(std::move(kept));
}

} // namespace discspace

#endif
