#ifndef DISCSPACE_FUNC_IO_HPP
#define DISCSPACE_FUNC_IO_HPP

// Function-description documents: the JSON-shaped wire format used by the CLI.
//
//   {"const": [re, im]}            {"identity": true}      "identity"
//   {"poly": [c0, c1, ...]}        coefficients ascending, each re or [re, im]
//   {"mobius": [re, im]}           {"blaschke": [[re, im], ...]}
//   {"sum": [f, ...]}              {"product": [f, ...]}
//   {"scale": {"c": c, "f": f}}    {"shift": {"f": f, "c": c}}

#include <string>
#include <vector>

#include <json.hpp>

#include <discspace/func.hpp>

namespace discspace {

namespace detail {

inline complex parse_complex(const nlohmann::json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw parse_error(path, "expected a number or a [re, im] pair");
}

inline DiscPoint parse_disc_point(const nlohmann::json& j, const std::string& path) {
  const complex z = parse_complex(j, path);
  if (!(std::abs(z) < 1.0)) {
    throw invalid_parameter(path + ": parameter " + to_string(z) + " is not inside the unit disc");
  }
  return DiscPoint(z);
}

inline const nlohmann::json& require_member(const nlohmann::json& obj, const char* key,
                                            const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw parse_error(path, std::string("missing key \"") + key + "\"");
  }
  return obj.at(key);
}

} // namespace detail

/// Builds a Func from a function-description document. Errors carry a
/// JSON-path-like location such as `$.sum[1].mobius`.
inline Func build_function(const nlohmann::json& doc, const std::string& path = "$") {
  using detail::parse_complex;

  if (doc.is_string()) {
    if (doc.get<std::string>() == "identity") return identity();
    throw parse_error(path, "unknown function name \"" + doc.get<std::string>() + "\"");
  }
  if (!doc.is_object() || doc.size() != 1) {
    throw parse_error(path, "a function node is an object with exactly one key");
  }

  const auto& [key, body] = *doc.items().begin();
  const std::string here = path + "." + key;

  auto children = [&](const char* what) {
    if (!body.is_array() || body.empty()) throw parse_error(here, std::string(what) + " needs a non-empty array");
    std::vector<Func> fs;
    for (std::size_t i = 0; i < body.size(); ++i) {
      fs.push_back(build_function(body[i], here + "[" + std::to_string(i) + "]"));
    }
    return fs;
  };

  if (key == "const") return constant(parse_complex(body, here));
  if (key == "identity") return identity();
  if (key == "poly") {
    if (!body.is_array()) throw parse_error(here, "expected an array of coefficients");
    std::vector<complex> coeffs;
    for (std::size_t i = 0; i < body.size(); ++i) {
      coeffs.push_back(parse_complex(body[i], here + "[" + std::to_string(i) + "]"));
    }
    return polynomial(std::move(coeffs));
  }
  if (key == "mobius") return mobius(detail::parse_disc_point(body, here));
  if (key == "blaschke") {
    if (!body.is_array()) throw parse_error(here, "expected an array of zeros");
    std::vector<DiscPoint> zs;
    for (std::size_t i = 0; i < body.size(); ++i) {
      zs.push_back(detail::parse_disc_point(body[i], here + "[" + std::to_string(i) + "]"));
    }
    return blaschke_from_zeros(ZeroSequence(std::move(zs)));
  }
  if (key == "sum" || key == "product") {
    auto fs = children(key.c_str());
    Func acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = key == "sum" ? sum(acc, fs[i]) : product(acc, fs[i]);
    return acc;
  }
  if (key == "scale") {
    const complex c = parse_complex(detail::require_member(body, "c", here), here + ".c");
    return scale(c, build_function(detail::require_member(body, "f", here), here + ".f"));
  }
  if (key == "shift") {
    const complex c = parse_complex(detail::require_member(body, "c", here), here + ".c");
    return shift(build_function(detail::require_member(body, "f", here), here + ".f"), c);
  }
  throw parse_error(path, "unknown node \"" + key + "\"");
}

inline nlohmann::json complex_to_json(complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

/// Inverse of build_function.
inline nlohmann::json to_json(const Func& f) {
  using nlohmann::json;
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, nodes::Constant>) {
          return {{"const", complex_to_json(n.c)}};
        } else if constexpr (std::is_same_v<T, nodes::Identity>) {
          return {{"identity", true}};
        } else if constexpr (std::is_same_v<T, nodes::Polynomial>) {
          json arr = json::array();
          for (const auto& c : n.coeffs) arr.push_back(complex_to_json(c));
          return {{"poly", arr}};
        } else if constexpr (std::is_same_v<T, nodes::Mobius>) {
          return {{"mobius", complex_to_json(n.a.value())}};
        } else if constexpr (std::is_same_v<T, nodes::Blaschke>) {
          json arr = json::array();
          for (const auto& z : n.zeros) arr.push_back(complex_to_json(z.value()));
          return {{"blaschke", arr}};
        } else if constexpr (std::is_same_v<T, nodes::Sum>) {
          return {{"sum", json::array({to_json(n.lhs), to_json(n.rhs)})}};
        } else if constexpr (std::is_same_v<T, nodes::Product>) {
          return {{"product", json::array({to_json(n.lhs), to_json(n.rhs)})}};
        } else if constexpr (std::is_same_v<T, nodes::Scale>) {
          return {{"scale", {{"c", complex_to_json(n.c)}, {"f", to_json(n.f)}}}};
        } else {
          return {{"shift", {{"f", to_json(n.f)}, {"c", complex_to_json(n.c)}}}};
        }
      },
      f.node().v);
}

} // namespace discspace

#endif
