#ifndef DISCSPACE_REPORT_HPP
#define DISCSPACE_REPORT_HPP

// Result tables and their CSV / JSON writers.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include <discspace/core.hpp>

namespace discspace {

// std::monostate is an absent value: empty in CSV, null in JSON.
using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

/// Rows of cells under a fixed header; one experiment per table.
struct Table {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
      throw invalid_parameter("table " + experiment + ": row has " + std::to_string(row.size()) +
                              " cells, header has " + std::to_string(columns.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const double* d = std::get_if<double>(&row[i]); d && !std::isfinite(*d)) {
        throw numeric_failure("table " + experiment + ": non-finite value in column " + columns[i] + " of row " +
                              std::to_string(rows.size()));
      }
    }
    rows.push_back(std::move(row));
  }
};

enum class Format { csv, json };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw invalid_parameter("unknown format \"" + s + "\" (expected csv or json)");
}

/// Shortest round-trip-safe text: %.17g.
inline std::string format_number(double x) {
  if (!std::isfinite(x)) throw numeric_failure("refusing to write a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  } v;
  return std::visit(v, c);
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
    os << "\r\n";
  }
}

inline nlohmann::ordered_json to_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::monostate>) obj[t.columns[i]] = nullptr;
            else obj[t.columns[i]] = v;
          },
          row[i]);
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json doc;
  doc["experiment"] = t.experiment;
  doc["rows"] = std::move(rows);
  return doc;
}

inline void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(2) << '\n'; }

inline void write_table(std::ostream& os, const Table& t, Format f) {
  if (f == Format::csv) write_csv(os, t);
  else write_json(os, t);
}

} // namespace discspace

#endif
