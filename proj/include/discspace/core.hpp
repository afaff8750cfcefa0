#ifndef DISCSPACE_CORE_HPP
#define DISCSPACE_CORE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace discspace {

using complex = std::complex<double>;

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A disc parameter (Möbius point, zero, evaluation point) lies outside its domain.
class invalid_parameter : public error {
public:
  using error::error;
};

/// A zero sequence is unusable (duplicates, empty where a point is required).
class degenerate_sequence : public error {
public:
  using error::error;
};

/// A function-description or config document is malformed; `path` locates the offending node.
class parse_error : public error {
public:
  parse_error(std::string path, const std::string& what)
      : error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

/// A quadrature or search produced a non-finite value.
class numeric_failure : public error {
public:
  using error::error;
};

/// 1 - |z|^2 computed as (1 - |z|)(1 + |z|), which keeps relative accuracy near the circle.
inline double one_minus_abs2(complex z) noexcept {
  const double r = std::abs(z);
  return (1.0 - r) * (1.0 + r);
}

inline std::string to_string(complex z) {
  return "[" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + "]";
}

} // namespace discspace

#endif
