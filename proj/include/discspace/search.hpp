#ifndef DISCSPACE_SEARCH_HPP
#define DISCSPACE_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <discspace/core.hpp>

namespace discspace {

/// Grid plus refinement parameters for sup-type searches over the disc.
struct SearchConfig {
  int radii = 64;               // radial grid, uniform in hyperbolic distance
  int angles = 128;
  double max_radius = 1.0 - 1e-6;
  double tol = 1e-6;            // refinement stops once the chart step is below this
  int refine_top = 4;           // grid maxima refined in addition to hint points
  double initial_step = 0.5;    // first refinement bracket, pseudo-hyperbolic units
};

/// Grid value, refined value and arg-sup of a search.
struct SupResult {
  double grid_value = 0.0;
  double value = 0.0;
  complex witness{0.0, 0.0};
  double last_gain = 0.0;       // improvement of the final refinement sweep
  bool hit_truncation = false;  // arg-sup sits on the search radius
};

/// Golden-section search for a maximum of `f` on [lo, hi]. Returns (x, f(x)).
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

struct CircleSup {
  double value = 0.0;
  double angle = 0.0;
  complex point{1.0, 0.0};
};

/// Maximum of h(e^{i theta}) by dense sampling followed by golden-section
/// refinement around the best few local maxima.
template <typename F>
CircleSup sup_on_circle(F&& h, int samples = 4096, double tol = 1e-12) {
  const double step = 2.0 * std::numbers::pi / samples;
  std::vector<double> v(samples);
  for (int j = 0; j < samples; ++j) v[j] = h(std::polar(1.0, j * step));

  std::vector<int> peaks;
  for (int j = 0; j < samples; ++j) {
    const double prev = v[(j + samples - 1) % samples], next = v[(j + 1) % samples];
    if (v[j] >= prev && v[j] >= next) peaks.push_back(j);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return v[a] > v[b]; });
  if (peaks.size() > 4) peaks.resize(4);

  CircleSup best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int j : peaks) {
    if (v[j] > best.value) best = {v[j], j * step, std::polar(1.0, j * step)};
    auto [t, val] = golden_max([&](double th) { return h(std::polar(1.0, th)); }, (j - 1) * step,
                               (j + 1) * step, tol);
    if (val > best.value) best = {val, t, std::polar(1.0, t)};
  }
  if (!std::isfinite(best.value)) throw numeric_failure("sup_on_circle: non-finite samples");
  return best;
}

namespace detail {

// Möbius chart at c: (x, y) -> sigma_c(-u (x + i y)) with u = c/|c|, so x
// moves radially and y tangentially, both in pseudo-hyperbolic units.
inline complex chart_point(complex c, double x, double y) {
  const double r = std::abs(c);
  const complex u = r > 0.0 ? c / r : complex(1.0);
  const complex w = -u * complex(x, y);
  return (c - w) / (1.0 - std::conj(c) * w);
}

} // namespace detail

/// Local refinement of a maximum of phi around `start` by alternating
/// golden-section searches in the radial and tangential chart directions.
/// Only improvements are accepted, so the value never decreases.
template <typename F>
SupResult refine_in_chart(F&& phi, complex start, double start_value, const SearchConfig& cfg,
                          double truncation) {
  auto guarded = [&](complex z) {
    return std::abs(z) <= truncation ? phi(z) : -std::numeric_limits<double>::infinity();
  };
  complex c = start;
  double best = start_value;
  double gain = 0.0;
  for (double h = cfg.initial_step; h > cfg.tol; h *= 0.25) {
    const double before = best;
    for (int axis = 0; axis < 2; ++axis) {
      auto along = [&](double t) {
        return guarded(axis == 0 ? detail::chart_point(c, t, 0.0) : detail::chart_point(c, 0.0, t));
      };
      auto [t, val] = golden_max(along, -h, h, std::max(cfg.tol, h * 1e-3));
      if (val > best) {
        best = val;
        c = axis == 0 ? detail::chart_point(c, t, 0.0) : detail::chart_point(c, 0.0, t);
      }
    }
    gain = best - before;
  }
  SupResult out;
  out.grid_value = start_value;
  out.value = best;
  out.witness = c;
  out.last_gain = gain;
  return out;
}

/// Sup of phi over {|z| <= truncation}: polar grid (uniform in hyperbolic
/// radius) plus hint points, then chart refinement of the hints and of the
/// best `refine_top` grid points. The grid value is the max over grid and hints.
template <typename F>
SupResult sup_on_disc(F&& phi, const SearchConfig& cfg, std::span<const complex> hints = {},
                      double truncation = -1.0) {
  if (truncation < 0.0) truncation = cfg.max_radius;
  const double t_max = std::atanh(std::min(cfg.max_radius, truncation));

  struct Sample {
    complex z;
    double v;
  };
  std::vector<Sample> grid;
  grid.push_back({0.0, phi(complex(0.0))});
  for (int i = 1; i < cfg.radii; ++i) {
    const double r = std::tanh(t_max * i / (cfg.radii - 1));
    for (int j = 0; j < cfg.angles; ++j) {
      const complex z = std::polar(r, 2.0 * std::numbers::pi * j / cfg.angles);
      grid.push_back({z, phi(z)});
    }
  }
  std::vector<Sample> seeds;
  for (complex z : hints) {
    if (std::abs(z) <= truncation) seeds.push_back({z, phi(z)});
  }

  SupResult out;
  out.grid_value = -std::numeric_limits<double>::infinity();
  for (const auto& s : grid) {
    if (!std::isfinite(s.v)) throw numeric_failure("sup_on_disc: objective not finite at " + to_string(s.z));
    if (s.v > out.grid_value) {
      out.grid_value = s.v;
      out.witness = s.z;
    }
  }
  for (const auto& s : seeds) {
    if (s.v > out.grid_value) {
      out.grid_value = s.v;
      out.witness = s.z;
    }
  }
  out.value = out.grid_value;

  // Pick separated grid maxima.
  std::vector<Sample> sorted = grid;
  std::sort(sorted.begin(), sorted.end(), [](const Sample& a, const Sample& b) { return a.v > b.v; });
  auto far_from = [](complex a, complex b) {
    const double d = std::abs(a - b);
    return d / std::sqrt(d * d + one_minus_abs2(a) * one_minus_abs2(b)) > 0.3;
  };
  int added = 0;
  for (const auto& s : sorted) {
    if (added >= cfg.refine_top) break;
    if (std::all_of(seeds.begin(), seeds.end(), [&](const Sample& q) { return far_from(q.z, s.z); })) {
      seeds.push_back(s);
      ++added;
    }
  }

  for (const auto& s : seeds) {
    const auto r = refine_in_chart(phi, s.z, s.v, cfg, truncation);
    if (r.value > out.value) {
      out.value = r.value;
      out.witness = r.witness;
      out.last_gain = r.last_gain;
    }
  }
  out.hit_truncation = std::abs(out.witness) >= truncation * (1.0 - 1e-9);
  return out;
}

} // namespace discspace

#endif
