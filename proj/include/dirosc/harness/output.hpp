#pragma once

// Tabular results and their CSV / JSON renderings.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dirosc/harness/config.hpp"
#include "dirosc/params.hpp"

namespace dirosc::harness {

/// Empty cell (no closed form, say), a number or a label.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error("Table: row width does not match header");
    rows.push_back(std::move(row));
  }
};

inline Cell optional_cell(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return std::monostate{};
  return *x;
}

namespace detail {

inline std::string csv_field(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return {};
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

inline nlohmann::ordered_json json_value(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
  return std::get<std::string>(c);
}

}  // namespace detail

/// Header row, then one line per row; LF endings, 17 significant digits.
inline std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::string render_json(const Table& t) {
  nlohmann::ordered_json doc;
  doc["metadata"] = t.metadata;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = detail::json_value(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

inline std::string render(const Table& t, Format f) { return f == Format::csv ? render_csv(t) : render_json(t); }

/// Writes to `path`, or to stdout when the path is empty or "-".
inline void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw Error("failed writing output file '" + path + "'");
}

}  // namespace dirosc::harness
