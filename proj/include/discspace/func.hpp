#ifndef DISCSPACE_FUNC_HPP
#define DISCSPACE_FUNC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <discspace/core.hpp>
#include <discspace/geometry.hpp>

namespace discspace {

struct FuncNode;

/// Immutable expression tree for an analytic function on the disc.
///
/// Nodes are shared, so copying a Func is cheap and subtrees may be reused
/// freely. Build instances with the factory functions below or from a
/// function-description document (see func_io.hpp).
class Func {
public:
  explicit Func(std::shared_ptr<const FuncNode> node) : node_(std::move(node)) {}

  const FuncNode& node() const noexcept { return *node_; }

private:
  std::shared_ptr<const FuncNode> node_;
};

namespace nodes {

struct Constant {
  complex c;
};
struct Identity {};
/// Ascending-degree coefficients.
struct Polynomial {
  std::vector<complex> coeffs;
};
struct Mobius {
  DiscPoint a;
};
/// Factors units[k] * sigma_{z_k}(z), or plain z for a zero at the origin.
struct Blaschke {
  ZeroSequence zeros;
  std::vector<complex> units;
};
struct Sum {
  Func lhs, rhs;
};
struct Product {
  Func lhs, rhs;
};
struct Scale {
  complex c;
  Func f;
};
/// f(z) + c.
struct Shift {
  Func f;
  complex c;
};

} // namespace nodes

struct FuncNode {
  std::variant<nodes::Constant, nodes::Identity, nodes::Polynomial, nodes::Mobius, nodes::Blaschke,
               nodes::Sum, nodes::Product, nodes::Scale, nodes::Shift>
      v;
};

namespace detail {

template <typename T>
Func make_func(T&& n) {
  return Func(std::make_shared<const FuncNode>(FuncNode{std::forward<T>(n)}));
}

// Pseudo-hyperbolic radius around a zero inside which the Blaschke derivative
// switches from the logarithmic form to the product rule.
inline constexpr double kBlaschkeNearZero = 1e-6;

} // namespace detail

// --- factories -------------------------------------------------------------

inline Func constant(complex c) { return detail::make_func(nodes::Constant{c}); }
inline Func identity() { return detail::make_func(nodes::Identity{}); }
inline Func polynomial(std::vector<complex> coeffs) {
  return detail::make_func(nodes::Polynomial{std::move(coeffs)});
}
inline Func mobius(DiscPoint a) { return detail::make_func(nodes::Mobius{a}); }
inline Func sum(Func f, Func g) { return detail::make_func(nodes::Sum{std::move(f), std::move(g)}); }
inline Func product(Func f, Func g) {
  return detail::make_func(nodes::Product{std::move(f), std::move(g)});
}
inline Func scale(complex c, Func f) { return detail::make_func(nodes::Scale{c, std::move(f)}); }
inline Func shift(Func f, complex c) { return detail::make_func(nodes::Shift{std::move(f), c}); }

inline Func operator+(Func f, Func g) { return sum(std::move(f), std::move(g)); }
inline Func operator*(Func f, Func g) { return product(std::move(f), std::move(g)); }
inline Func operator*(complex c, Func f) { return scale(c, std::move(f)); }
inline Func operator+(Func f, complex c) { return shift(std::move(f), c); }
inline Func operator-(Func f, complex c) { return shift(std::move(f), -c); }

/// Finite Blaschke product prod (|z_n|/z_n)(z_n - z)/(1 - conj(z_n) z), with
/// the factor for a zero at the origin fixed to b(z) = z.
inline Func blaschke_from_zeros(const ZeroSequence& zs) {
  std::vector<complex> units;
  units.reserve(zs.size());
  for (const auto& p : zs) {
    const complex a = p.value();
    units.push_back(a == 0.0 ? complex(1.0) : std::abs(a) / a);
  }
  return detail::make_func(nodes::Blaschke{zs, std::move(units)});
}

/// f_a = sigma_a - a, the unit-norm test function shared by the Bloch,
/// Dirichlet and BMOA lower-bound arguments. f_a(0) = 0.
inline Func test_bloch_family(DiscPoint a) { return shift(mobius(a), -a.value()); }

/// F_a(z) = (1 - |a|^2) / (1 - conj(a) z)^2, built from Möbius nodes through
/// 1 / (1 - conj(a) z) = (1 - conj(a) sigma_a(z)) / (1 - |a|^2).
inline Func bergman_kernel_unit(DiscPoint a) {
  const complex av = a.value();
  const Func t = shift(scale(-std::conj(av), mobius(a)), 1.0);
  return scale(1.0 / one_minus_abs2(av), product(t, t));
}

// --- evaluation ------------------------------------------------------------

struct ValueDeriv {
  complex value;
  complex deriv;
};

namespace detail {

inline complex mobius_value(complex a, complex z) { return (a - z) / (1.0 - std::conj(a) * z); }

inline ValueDeriv mobius_both(complex a, complex z) {
  const complex den = 1.0 - std::conj(a) * z;
  return {(a - z) / den, -one_minus_abs2(a) / (den * den)};
}

inline ValueDeriv blaschke_both(const nodes::Blaschke& b, complex z) {
  const std::size_t n = b.zeros.size();
  if (n == 0) return {1.0, 0.0};

  std::vector<ValueDeriv> f(n);
  bool near_zero = false;
  for (std::size_t k = 0; k < n; ++k) {
    const complex a = b.zeros[k].value();
    if (a == 0.0) {
      f[k] = {z, 1.0};
    } else {
      const auto m = mobius_both(a, z);
      f[k] = {b.units[k] * m.value, b.units[k] * m.deriv};
    }
    if (std::abs(f[k].value) < kBlaschkeNearZero) near_zero = true;
  }

  if (!near_zero) {
    complex value = 1.0, logd = 0.0;
    for (const auto& fk : f) {
      value *= fk.value;
      logd += fk.deriv / fk.value;
    }
    return {value, value * logd};
  }

  // Product rule with prefix/suffix products: exact at and near the zeros.
  std::vector<complex> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * f[k].value;
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * f[k].value;
  complex deriv = 0.0;
  for (std::size_t k = 0; k < n; ++k) deriv += prefix[k] * f[k].deriv * suffix[k + 1];
  return {prefix[n], deriv};
}

inline complex blaschke_value(const nodes::Blaschke& b, complex z) {
  complex value = 1.0;
  for (std::size_t k = 0; k < b.zeros.size(); ++k) {
    const complex a = b.zeros[k].value();
    value *= (a == 0.0) ? z : b.units[k] * mobius_value(a, z);
  }
  return value;
}

} // namespace detail

/// Pointwise value. Defined inside the disc and, for Möbius, Blaschke and
/// polynomial nodes, on the circle as well.
inline complex eval(const Func& f, complex z) {
  return std::visit(
      [z](const auto& n) -> complex {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, nodes::Constant>) {
          return n.c;
        } else if constexpr (std::is_same_v<T, nodes::Identity>) {
          return z;
        } else if constexpr (std::is_same_v<T, nodes::Polynomial>) {
          complex acc = 0.0;
          for (auto it = n.coeffs.rbegin(); it != n.coeffs.rend(); ++it) acc = acc * z + *it;
          return acc;
        } else if constexpr (std::is_same_v<T, nodes::Mobius>) {
          return detail::mobius_value(n.a.value(), z);
        } else if constexpr (std::is_same_v<T, nodes::Blaschke>) {
          return detail::blaschke_value(n, z);
        } else if constexpr (std::is_same_v<T, nodes::Sum>) {
          return eval(n.lhs, z) + eval(n.rhs, z);
        } else if constexpr (std::is_same_v<T, nodes::Product>) {
          return eval(n.lhs, z) * eval(n.rhs, z);
        } else if constexpr (std::is_same_v<T, nodes::Scale>) {
          return n.c * eval(n.f, z);
        } else {
          return eval(n.f, z) + n.c;
        }
      },
      f.node().v);
}

/// Value and exact derivative by structural recursion.
inline ValueDeriv eval_both(const Func& f, complex z) {
  return std::visit(
      [z](const auto& n) -> ValueDeriv {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, nodes::Constant>) {
          return {n.c, 0.0};
        } else if constexpr (std::is_same_v<T, nodes::Identity>) {
          return {z, 1.0};
        } else if constexpr (std::is_same_v<T, nodes::Polynomial>) {
          complex p = 0.0, dp = 0.0;
          for (auto it = n.coeffs.rbegin(); it != n.coeffs.rend(); ++it) {
            dp = dp * z + p;
            p = p * z + *it;
          }
          return {p, dp};
        } else if constexpr (std::is_same_v<T, nodes::Mobius>) {
          return detail::mobius_both(n.a.value(), z);
        } else if constexpr (std::is_same_v<T, nodes::Blaschke>) {
          return detail::blaschke_both(n, z);
        } else if constexpr (std::is_same_v<T, nodes::Sum>) {
          const auto l = eval_both(n.lhs, z), r = eval_both(n.rhs, z);
          return {l.value + r.value, l.deriv + r.deriv};
        } else if constexpr (std::is_same_v<T, nodes::Product>) {
          const auto l = eval_both(n.lhs, z), r = eval_both(n.rhs, z);
          return {l.value * r.value, l.deriv * r.value + l.value * r.deriv};
        } else if constexpr (std::is_same_v<T, nodes::Scale>) {
          const auto s = eval_both(n.f, z);
          return {n.c * s.value, n.c * s.deriv};
        } else {
          const auto s = eval_both(n.f, z);
          return {s.value + n.c, s.deriv};
        }
      },
      f.node().v);
}

inline complex deriv_eval(const Func& f, complex z) { return eval_both(f, z).deriv; }

/// Symbolic derivative, closed over the node set.
inline Func differentiate(const Func& f) {
  return std::visit(
      [](const auto& n) -> Func {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, nodes::Constant>) {
          return constant(0.0);
        } else if constexpr (std::is_same_v<T, nodes::Identity>) {
          return constant(1.0);
        } else if constexpr (std::is_same_v<T, nodes::Polynomial>) {
          if (n.coeffs.size() <= 1) return constant(0.0);
          std::vector<complex> d(n.coeffs.size() - 1);
          for (std::size_t k = 1; k < n.coeffs.size(); ++k) d[k - 1] = double(k) * n.coeffs[k];
          return polynomial(std::move(d));
        } else if constexpr (std::is_same_v<T, nodes::Mobius>) {
          // sigma_a' = -F_a
          return scale(-1.0, bergman_kernel_unit(n.a));
        } else if constexpr (std::is_same_v<T, nodes::Blaschke>) {
          const std::size_t count = n.zeros.size();
          if (count == 0) return constant(0.0);
          std::optional<Func> acc;
          for (std::size_t k = 0; k < count; ++k) {
            std::vector<DiscPoint> rest;
            for (std::size_t j = 0; j < count; ++j) {
              if (j != k) rest.push_back(n.zeros[j]);
            }
            const Func others = blaschke_from_zeros(ZeroSequence(std::move(rest)));
            const complex a = n.zeros[k].value();
            const Func term =
                a == 0.0 ? others
                         : product(scale(-n.units[k], bergman_kernel_unit(n.zeros[k])), others);
            acc = acc ? sum(*acc, term) : term;
          }
          return *acc;
        } else if constexpr (std::is_same_v<T, nodes::Sum>) {
          return sum(differentiate(n.lhs), differentiate(n.rhs));
        } else if constexpr (std::is_same_v<T, nodes::Product>) {
          return sum(product(differentiate(n.lhs), n.rhs), product(n.lhs, differentiate(n.rhs)));
        } else if constexpr (std::is_same_v<T, nodes::Scale>) {
          return scale(n.c, differentiate(n.f));
        } else {
          return differentiate(n.f);
        }
      },
      f.node().v);
}

/// Taylor coefficients when the tree is built only from constants, the
/// identity and polynomials (closed under sum, product, scale and shift).
inline std::optional<std::vector<complex>> polynomial_coefficients(const Func& f) {
  using Coeffs = std::vector<complex>;
  return std::visit(
      [](const auto& n) -> std::optional<Coeffs> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, nodes::Constant>) {
          return Coeffs{n.c};
        } else if constexpr (std::is_same_v<T, nodes::Identity>) {
          return Coeffs{0.0, 1.0};
        } else if constexpr (std::is_same_v<T, nodes::Polynomial>) {
          return n.coeffs.empty() ? Coeffs{0.0} : n.coeffs;
        } else if constexpr (std::is_same_v<T, nodes::Mobius> ||
                             std::is_same_v<T, nodes::Blaschke>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, nodes::Sum>) {
          auto l = polynomial_coefficients(n.lhs), r = polynomial_coefficients(n.rhs);
          if (!l || !r) return std::nullopt;
          Coeffs out(std::max(l->size(), r->size()), 0.0);
          for (std::size_t k = 0; k < l->size(); ++k) out[k] += (*l)[k];
          for (std::size_t k = 0; k < r->size(); ++k) out[k] += (*r)[k];
          return out;
        } else if constexpr (std::is_same_v<T, nodes::Product>) {
          auto l = polynomial_coefficients(n.lhs), r = polynomial_coefficients(n.rhs);
          if (!l || !r) return std::nullopt;
          Coeffs out(l->size() + r->size() - 1, 0.0);
          for (std::size_t i = 0; i < l->size(); ++i)
            for (std::size_t j = 0; j < r->size(); ++j) out[i + j] += (*l)[i] * (*r)[j];
          return out;
        } else if constexpr (std::is_same_v<T, nodes::Scale>) {
          auto s = polynomial_coefficients(n.f);
          if (!s) return std::nullopt;
          for (auto& c : *s) c *= n.c;
          return s;
        } else {
          auto s = polynomial_coefficients(n.f);
          if (!s) return std::nullopt;
          (*s)[0] += n.c;
          return s;
        }
      },
      f.node().v);
}

/// Zeros of every Blaschke node in the tree, in traversal order.
inline std::vector<DiscPoint> blaschke_zeros(const Func& f) {
  std::vector<DiscPoint> out;
  auto walk = [&out](const auto& self, const Func& g) -> void {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, nodes::Blaschke>) {
            out.insert(out.end(), n.zeros.begin(), n.zeros.end());
          } else if constexpr (std::is_same_v<T, nodes::Sum> || std::is_same_v<T, nodes::Product>) {
            self(self, n.lhs);
            self(self, n.rhs);
          } else if constexpr (std::is_same_v<T, nodes::Scale> || std::is_same_v<T, nodes::Shift>) {
            self(self, n.f);
          }
        },
        g.node().v);
  };
  walk(walk, f);
  return out;
}

// --- primitive pairs -------------------------------------------------------

/// The analytic F with F(0) = value_at_zero and F' = derivative. Every norm
/// except the Bergman norm is a functional of this pair alone.
struct PrimitivePair {
  complex value_at_zero;
  Func derivative;
};

inline PrimitivePair primitive_of(const Func& f) { return {eval(f, 0.0), differentiate(f)}; }

} // namespace discspace

#endif
