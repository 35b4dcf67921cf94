// Copyright 2026 The vmfbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Long-format result tables with CSV and JSON writers. CSV numbers carry 12
// significant digits; parsing a written CSV and writing it again reproduces
// the original bytes.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace vmfbench {

// Empty cells are monostate.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::invalid_argument("Table: row width mismatch");
    rows.push_back(std::move(row));
  }
  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw std::out_of_range("Table: no column '" + name + "'");
  }
  double number(std::size_t row, const std::string& name) const {
    const Cell& c = rows.at(row).at(column_index(name));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw std::invalid_argument("Table: cell in '" + name + "' is not numeric");
  }
};

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

// The double that prints as format_number(x).
inline double round_significant(double x) {
  if (!std::isfinite(x)) return x;
  const std::string s = format_number(x);
  double y = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), y);
  return y;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
  };
  return std::visit(Visitor{}, c);
}

inline Cell parse_cell(const std::string& text, bool quoted) {
  if (quoted) return text;
  if (text.empty()) return std::monostate{};
  const char* first = text.data();
  const char* last = first + text.size();
  std::int64_t i = 0;
  if (text == "-0") return -0.0;
  if (auto r = std::from_chars(first, last, i); r.ec == std::errc{} && r.ptr == last) return i;
  double d = 0.0;
  if (auto r = std::from_chars(first, last, d); r.ec == std::errc{} && r.ptr == last) return d;
  return text;
}

inline std::vector<std::pair<std::string, bool>> split_csv_line(const std::string& line) {
  std::vector<std::pair<std::string, bool>> fields;
  std::string cur;
  bool quoted = false, in_quotes = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (in_quotes) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = quoted = true;
    } else if (c == ',') {
      fields.emplace_back(std::move(cur), quoted);
      cur.clear();
      quoted = false;
    } else {
      cur += c;
    }
  }
  if (in_quotes) throw std::invalid_argument("read_csv: unterminated quote");
  fields.emplace_back(std::move(cur), quoted);
  return fields;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << detail::csv_escape(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::cell_text(row[i]);
    os << '\n';
  }
}

inline Table read_csv(std::istream& is) {
  Table table;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("read_csv: missing header");
  for (auto& [name, quoted] : detail::split_csv_line(line)) table.columns.push_back(name);
  while (std::getline(is, line)) {
    std::vector<Cell> row;
    for (auto& [text, quoted] : detail::split_csv_line(line)) row.push_back(detail::parse_cell(text, quoted));
    table.add_row(std::move(row));
  }
  return table;
}

inline std::string to_csv(const Table& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

inline nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      nlohmann::ordered_json v;
      if (const auto* n = std::get_if<std::int64_t>(&c)) v = *n;
      if (const auto* d = std::get_if<double>(&c)) {
        v = std::isfinite(*d) ? nlohmann::ordered_json(round_significant(*d))
                              : nlohmann::ordered_json(format_number(*d));
      }
      if (const auto* s = std::get_if<std::string>(&c)) v = *s;
      obj[table.columns[i]] = std::move(v);
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json out;
  out["columns"] = table.columns;
  out["rows"] = std::move(rows);
  return out;
}

inline void write_json(std::ostream& os, const Table& table) { os << to_json(table).dump(2) << '\n'; }

}  // namespace vmfbench
