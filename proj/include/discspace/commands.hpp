#ifndef DISCSPACE_COMMANDS_HPP
#define DISCSPACE_COMMANDS_HPP

// The four CLI commands as functions from a JSON config to a result table.
// Config keys shared by all commands:
//
//   "seed": u64                      corpus / suite seed (overridden by --seed)
//   "quadrature": {"n_r", "n_t"}     overridden by DISCSPACE_NR / DISCSPACE_NT
//   "search": {"radii", "angles", "max_radius", "tol", "refine_top", "initial_step"}
//   "bmoa": {"radii", "angles", "truncation", "tol", "refine_top"}

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <tuple>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <discspace/checks.hpp>
#include <discspace/core.hpp>
#include <discspace/corpus.hpp>
#include <discspace/func.hpp>
#include <discspace/func_io.hpp>
#include <discspace/operators.hpp>
#include <discspace/quadrature.hpp>
#include <discspace/report.hpp>
#include <discspace/search.hpp>
#include <discspace/spaces.hpp>

namespace discspace {

struct CommandOptions {
  std::optional<std::uint64_t> seed;  // --seed
  std::optional<int> n_r, n_t;         // environment overrides
};

namespace detail {

using nlohmann::json;

template <typename T>
T config_value(const json& cfg, const char* key, T fallback, const std::string& path) {
  if (!cfg.is_object() || !cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw parse_error(path + "." + key, "has the wrong type");
  }
}

inline const json& config_member(const json& cfg, const char* key, const std::string& path) {
  if (!cfg.is_object() || !cfg.contains(key)) throw parse_error(path, std::string("missing key \"") + key + "\"");
  return cfg.at(key);
}

inline std::string required_string(const json& cfg, const char* key) {
  const json& v = config_member(cfg, key, "$");
  if (!v.is_string()) throw parse_error(std::string("$.") + key, "expected a string");
  return v.get<std::string>();
}

inline std::optional<int> env_int(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const long x = std::strtol(v, &end, 10);
  if (*end != '\0' || x <= 0 || x > 1'000'000) {
    throw invalid_parameter(std::string(name) + "=" + v + " is not a positive integer");
  }
  return int(x);
}

inline std::pair<int, int> quadrature_sizes(const json& cfg, const CommandOptions& opt) {
  const json q = cfg.contains("quadrature") ? cfg.at("quadrature") : json::object();
  int n_r = config_value(q, "n_r", kDefaultRadialNodes, "$.quadrature");
  int n_t = config_value(q, "n_t", kDefaultAngularNodes, "$.quadrature");
  if (opt.n_r) n_r = *opt.n_r;
  if (opt.n_t) n_t = *opt.n_t;
  return {n_r, n_t};
}

inline SearchConfig search_config(const json& cfg, const char* key, SearchConfig s) {
  if (!cfg.contains(key)) return s;
  const json& j = cfg.at(key);
  const std::string path = std::string("$.") + key;
  s.radii = config_value(j, "radii", s.radii, path);
  s.angles = config_value(j, "angles", s.angles, path);
  s.max_radius = config_value(j, "max_radius", s.max_radius, path);
  s.tol = config_value(j, "tol", s.tol, path);
  s.refine_top = config_value(j, "refine_top", s.refine_top, path);
  s.initial_step = config_value(j, "initial_step", s.initial_step, path);
  if (s.radii < 2 || s.angles < 1 || !(s.tol > 0.0) || !(s.max_radius > 0.0 && s.max_radius < 1.0)) {
    throw invalid_parameter(path + ": invalid search parameters");
  }
  return s;
}

inline BmoaConfig bmoa_config(const json& cfg) {
  BmoaConfig b;
  b.search = search_config(cfg, "bmoa", b.search);
  if (cfg.contains("bmoa")) b.truncation = config_value(cfg.at("bmoa"), "truncation", b.truncation, "$.bmoa");
  if (!(b.truncation > 0.0 && b.truncation < 1.0)) throw invalid_parameter("$.bmoa.truncation must lie in (0, 1)");
  b.search.max_radius = b.truncation;
  return b;
}

inline std::uint64_t seed_of(const json& cfg, const CommandOptions& opt) {
  if (opt.seed) return *opt.seed;
  return config_value<std::uint64_t>(cfg, "seed", 7, "$");
}

inline std::vector<json> function_documents(const json& cfg) {
  if (cfg.contains("functions")) {
    const json& fs = cfg.at("functions");
    if (!fs.is_array() || fs.empty()) throw parse_error("$.functions", "expected a non-empty array");
    return {fs.begin(), fs.end()};
  }
  if (cfg.contains("f")) return {cfg.at("f")};
  throw parse_error("$", "missing key \"functions\" (or \"f\")");
}

inline std::string compact(const json& doc) { return doc.is_string() ? doc.get<std::string>() : doc.dump(); }

inline Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

inline std::vector<DiscPoint> parse_points(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw parse_error(path, "expected an array of points");
  std::vector<DiscPoint> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(parse_disc_point(arr[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

} // namespace detail

/// `norm`: one row per input function.
///   "space": bloch | dirichlet | bergman | h2 | bmoa
///   "functions": [doc, ...]  (or "f": doc)
inline Table cmd_norm(const nlohmann::json& cfg, const CommandOptions& opt = {}) {
  using namespace detail;
  const std::string space = required_string(cfg, "space");
  const auto docs = function_documents(cfg);
  const auto [n_r, n_t] = quadrature_sizes(cfg, opt);
  const auto search = search_config(cfg, "search", {});
  const auto bmoa = bmoa_config(cfg);

  std::optional<QuadratureRule> plain, logw;
  auto plain_rule = [&]() -> const QuadratureRule& { return plain ? *plain : plain.emplace(disc_rule(n_r, n_t)); };
  auto log_rule = [&]() -> const QuadratureRule& { return logw ? *logw : logw.emplace(log_disc_rule(n_r, n_t)); };

  Table t{"norm-" + space,
          {"index", "function", "space", "value", "seminorm", "method", "est_error", "witness_re", "witness_im",
           "grid_seminorm", "hit_truncation", "parseval"},
          {}};
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const std::string path = cfg.contains("functions") ? "$.functions[" + std::to_string(i) + "]" : "$.f";
    const Func f = build_function(docs[i], path);
    const auto fp = primitive_of(f);
    NormReport r;
    if (space == "bloch") r = bloch_norm(fp, search);
    else if (space == "dirichlet") r = dirichlet_norm(fp, plain_rule());
    else if (space == "bergman") r = bergman_norm(f, plain_rule());
    else if (space == "h2") r = h2_norm(fp, log_rule());
    else if (space == "bmoa") r = bmoa_norm(fp, log_rule(), bmoa);
    else throw invalid_parameter("$.space: unknown space \"" + space + "\" (bloch, dirichlet, bergman, h2, bmoa)");

    const Cell wre = r.witness ? Cell(r.witness->real()) : Cell();
    const Cell wim = r.witness ? Cell(r.witness->imag()) : Cell();
    t.add({std::int64_t(i), compact(docs[i]), space, r.value, r.seminorm, std::string(to_string(r.method)),
           r.est_error, wre, wim, opt_cell(r.grid_seminorm), r.hit_truncation, opt_cell(r.parseval)});
  }
  return t;
}

/// `opnorm`: one row per witness point; the row with best = true is the
/// reported lower bound.
///   "op": Sg | Tg,  "g": doc,  "space": bloch | dirichlet | bmoa (Sg only)
///   "witness_points": [[re, im], ...]  default: radii 0, .5, .75, .9, .95
///   toward the boundary arg-max of |g| (Sg) or |g'| (Tg)
inline Table cmd_opnorm(const nlohmann::json& cfg, const CommandOptions& opt = {}) {
  using namespace detail;
  const std::string op = required_string(cfg, "op");
  if (op != "Sg" && op != "Tg") throw invalid_parameter("$.op: expected Sg or Tg, got \"" + op + "\"");
  const Func g = build_function(config_member(cfg, "g", "$"), "$.g");
  const std::string space = op == "Tg" ? "dirichlet" : config_value<std::string>(cfg, "space", "dirichlet", "$");
  const auto [n_r, n_t] = quadrature_sizes(cfg, opt);
  const auto search = search_config(cfg, "search", {});

  SgSpace sg_space = SgSpace::dirichlet;
  std::optional<QuadratureRule> rule;
  if (space == "bloch") sg_space = SgSpace::bloch;
  else if (space == "dirichlet") rule = disc_rule(n_r, n_t);
  else if (space == "bmoa") sg_space = SgSpace::bmoa, rule = log_disc_rule(n_r, n_t);
  else throw invalid_parameter("$.space: unknown space \"" + space + "\" (bloch, dirichlet, bmoa)");
  if (!rule) rule = disc_rule(2, 4);

  const auto boundary = op == "Sg" ? opnorm_exact_Sg(g) : opnorm_exact_Tg(g);
  std::vector<DiscPoint> points;
  if (cfg.contains("witness_points")) {
    points = parse_points(cfg.at("witness_points"), "$.witness_points");
  } else {
    for (double r : {0.0, 0.5, 0.75, 0.9, 0.95}) points.emplace_back(r * boundary.argmax);
  }
  if (points.empty()) throw parse_error("$.witness_points", "needs at least one point");

  std::vector<OpNormEstimate> ests;
  std::size_t best = 0;
  for (const auto& a : points) {
    const DiscPoint one[] = {a};
    ests.push_back(op == "Sg" ? estimate_Sg(g, sg_space, one, *rule, search) : estimate_Tg(g, one, *rule));
    if (ests.back().lower > ests[best].lower) best = ests.size() - 1;
  }

  Table t{"opnorm-" + op,
          {"op", "space", "g", "a_re", "a_im", "witness", "exact", "exact_method", "lower", "lower_method", "gap",
           "est_error", "best"},
          {}};
  const std::string lower_method = space == "bloch" ? "grid-search" : "quadrature";
  for (std::size_t i = 0; i < ests.size(); ++i) {
    const auto& e = ests[i];
    t.add({op, space, compact(cfg.at("g")), points[i].re(), points[i].im(), e.witness, e.exact,
           std::string("closed-form"), e.lower, lower_method, e.gap, e.est_error, i == best});
  }
  return t;
}

/// `extremal`:
///   "space": bloch | bmoa   thin-Blaschke construction over "schedule" (N values)
///            dirichlet      deficiency scan over a seeded unit-Dirichlet corpus
///   "g": doc, "target_defect", "max_exponent", "radii", "schedule",
///   "corpus": {"size", "max_degree"}
inline Table cmd_extremal(const nlohmann::json& cfg, const CommandOptions& opt = {}) {
  using namespace detail;
  const std::string space = required_string(cfg, "space");
  const Func g = build_function(config_member(cfg, "g", "$"), "$.g");
  const auto [n_r, n_t] = quadrature_sizes(cfg, opt);

  if (space == "dirichlet") {
    const json corpus = cfg.contains("corpus") ? cfg.at("corpus") : json::object();
    CorpusConfig cc;
    cc.seed = seed_of(cfg, opt);
    cc.size = config_value<std::size_t>(corpus, "size", 200, "$.corpus");
    cc.max_degree = config_value(corpus, "max_degree", 10, "$.corpus");
    cc.norm = Normalization::dirichlet;
    const auto members = polynomial_corpus(cc);
    const auto rule = disc_rule(n_r, n_t);
    const double sg = opnorm_exact_Sg(g).value;
    Table t{"extremal-dirichlet",
            {"member", "degree", "dirichlet_norm", "deficiency", "running_min", "method", "seed"},
            {}};
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto fp = primitive_of(members[i]);
      const double d = dirichlet_deficiency(g, fp, rule, sg);
      running = std::min(running, d);
      const auto coeffs = polynomial_coefficients(members[i]);
      t.add({std::int64_t(i), std::int64_t(coeffs ? coeffs->size() - 1 : 0), dirichlet_norm(fp, rule).value, d,
             running, std::string("quadrature"), std::to_string(cc.seed)});
    }
    return t;
  }
  if (space != "bloch" && space != "bmoa") {
    throw invalid_parameter("$.space: unknown space \"" + space + "\" (bloch, bmoa, dirichlet)");
  }

  ExtremalConfig ec;
  ec.target_defect = config_value(cfg, "target_defect", ec.target_defect, "$");
  ec.max_exponent = config_value(cfg, "max_exponent", ec.max_exponent, "$");
  ec.radii = config_value(cfg, "radii", ec.radii, "$");
  ec.bloch = search_config(cfg, "search", ec.bloch);
  ec.bmoa = bmoa_config(cfg);
  const auto schedule = config_value(cfg, "schedule", std::vector<std::size_t>{1, 2, 4, 8, 16, 20}, "$");
  if (schedule.empty()) throw parse_error("$.schedule", "needs at least one N");
  std::optional<QuadratureRule> rule;
  if (space == "bmoa") rule = log_disc_rule(n_r, n_t);

  Table t{"extremal-" + space,
          {"N", "zeros", "exhausted", "exact", "numerator", "norm_of_h", "lower_bound", "gap", "method",
           "last_zero_re", "last_zero_im"},
          {}};
  for (std::size_t n : schedule) {
    const auto rec = space == "bloch" ? extremal_bloch(g, n, ec) : extremal_bmoa(g, n, *rule, ec);
    const Cell zre = rec.zeros.empty() ? Cell() : Cell(rec.zeros[rec.zeros.size() - 1].re());
    const Cell zim = rec.zeros.empty() ? Cell() : Cell(rec.zeros[rec.zeros.size() - 1].im());
    t.add({std::int64_t(n), std::int64_t(rec.zeros.size()), rec.exhausted, rec.exact, rec.numerator, rec.norm_of_h,
           rec.lower_bound, rec.exact - rec.lower_bound,
           std::string(space == "bloch" ? "grid-search" : "quadrature"), zre, zim});
  }
  return t;
}

/// `check`: one row per identity or inequality suite.
inline Table cmd_check(const nlohmann::json& cfg, const CommandOptions& opt = {}) {
  using namespace detail;
  CheckConfig cc;
  cc.seed = seed_of(cfg, opt);
  std::tie(cc.n_r, cc.n_t) = quadrature_sizes(cfg, opt);
  Table t{"check", {"suite", "cases", "worst", "threshold", "violations", "pass", "seed"}, {}};
  for (const auto& s : run_checks(cc)) {
    t.add({s.name, std::int64_t(s.cases), s.worst, s.threshold, std::int64_t(s.violations), s.pass,
           std::to_string(cc.seed)});
  }
  return t;
}

/// True when every row of a check table passed.
inline bool all_passed(const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c] != "pass") continue;
    for (const auto& row : t.rows) {
      if (!std::get<bool>(row[c])) return false;
    }
  }
  return true;
}

} // namespace discspace

#endif
