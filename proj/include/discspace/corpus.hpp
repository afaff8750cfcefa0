#ifndef DISCSPACE_CORPUS_HPP
#define DISCSPACE_CORPUS_HPP

// Seeded random corpora. The generator is std::mt19937_64, whose output
// sequence is fixed by the standard; doubles are taken from the top 53 bits
// so corpora are identical across standard libraries.
//
//   degree      d = 1 + (next() % max_degree)
//   coefficient a_k = re + i im, re and im uniform in [-1, 1], k = 0..d
//
// then the polynomial is scaled to unit norm in the requested space.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <discspace/core.hpp>
#include <discspace/func.hpp>
#include <discspace/geometry.hpp>
#include <discspace/search.hpp>
#include <discspace/spaces.hpp>

namespace discspace {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform on [0, 1).
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on the square [-1, 1]^2.
  complex unit_square() {
    const double re = uniform(-1.0, 1.0);
    return {re, uniform(-1.0, 1.0)};
  }

  /// Uniform (in area) on the disc |z| <= radius.
  complex in_disc(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
  }

private:
  std::mt19937_64 eng_;
};

enum class Normalization { none, dirichlet, bergman, h2, bloch };

inline const char* to_string(Normalization n) {
  switch (n) {
  case Normalization::none: return "none";
  case Normalization::dirichlet: return "dirichlet";
  case Normalization::bergman: return "bergman";
  case Normalization::h2: return "h2";
  case Normalization::bloch: return "bloch";
  }
  return "?";
}

inline Normalization parse_normalization(const std::string& s) {
  if (s == "none") return Normalization::none;
  if (s == "dirichlet") return Normalization::dirichlet;
  if (s == "bergman") return Normalization::bergman;
  if (s == "h2") return Normalization::h2;
  if (s == "bloch") return Normalization::bloch;
  throw invalid_parameter("unknown normalization \"" + s + "\"");
}

struct CorpusConfig {
  std::uint64_t seed = 7;
  std::size_t size = 200;
  int max_degree = 10;
  Normalization norm = Normalization::none;
  SearchConfig bloch_search{};
};

/// Coefficient lists a_0..a_d, before normalization.
inline std::vector<std::vector<complex>> random_coefficients(Rng& rng, std::size_t count, int max_degree) {
  if (max_degree < 1) throw invalid_parameter("corpus max_degree must be at least 1");
  std::vector<std::vector<complex>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int d = 1 + int(rng.next() % std::uint64_t(max_degree));
    std::vector<complex> c(d + 1);
    for (auto& a : c) a = rng.unit_square();
    out.push_back(std::move(c));
  }
  return out;
}

/// Norm of sum a_k z^k. Closed forms for the Hilbert norms, grid search for Bloch.
inline double polynomial_norm(const std::vector<complex>& c, Normalization n, const SearchConfig& search = {}) {
  double s = 0.0;
  switch (n) {
  case Normalization::none: return 1.0;
  case Normalization::dirichlet:
    s = std::norm(c[0]);
    for (std::size_t k = 1; k < c.size(); ++k) s += double(k) * std::norm(c[k]);
    return std::sqrt(s);
  case Normalization::bergman:
    for (std::size_t k = 0; k < c.size(); ++k) s += std::norm(c[k]) / double(k + 1);
    return std::sqrt(s);
  case Normalization::h2:
    for (const auto& a : c) s += std::norm(a);
    return std::sqrt(s);
  case Normalization::bloch: return bloch_norm(primitive_of(polynomial(c)), search).value;
  }
  return 1.0;
}

/// Random polynomials, scaled to unit norm when cfg.norm is set.
inline std::vector<Func> polynomial_corpus(const CorpusConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<Func> out;
  out.reserve(cfg.size);
  for (auto& c : random_coefficients(rng, cfg.size, cfg.max_degree)) {
    const double n = polynomial_norm(c, cfg.norm, cfg.bloch_search);
    if (!(n > 0.0)) throw numeric_failure("corpus member with zero norm");
    for (auto& a : c) a /= n;
    out.push_back(polynomial(std::move(c)));
  }
  return out;
}

/// `count` zero sets of `size` points uniform in |z| <= max_modulus.
inline std::vector<ZeroSequence> random_zero_sets(Rng& rng, std::size_t count, std::size_t size,
                                                  double max_modulus) {
  if (!(max_modulus > 0.0 && max_modulus < 1.0)) throw invalid_parameter("max_modulus must lie in (0, 1)");
  std::vector<ZeroSequence> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<DiscPoint> zs;
    for (std::size_t k = 0; k < size; ++k) zs.emplace_back(rng.in_disc(max_modulus));
    out.emplace_back(std::move(zs));
  }
  return out;
}

} // namespace discspace

#endif
