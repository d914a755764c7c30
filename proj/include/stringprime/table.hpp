#pragma once

// Tabular output in human, CSV and Markdown form. Numbers are rendered
// without locale formatting, '.' as the decimal point.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "stringprime/error.hpp"

namespace stringprime {

enum class OutputFormat { human, csv, markdown };

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "human") return OutputFormat::human;
  if (s == "csv") return OutputFormat::csv;
  if (s == "markdown") return OutputFormat::markdown;
  throw InvalidInput("unknown format '" + std::string(s) + "' (human, csv, markdown)");
}

// %g with the given number of significant digits.
inline std::string format_real(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

inline void render(std::ostream& out, const Table& t, OutputFormat fmt) {
  auto join = [&](const std::vector<std::string>& cells, std::string_view sep) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << sep;
      out << cells[i];
    }
  };
  switch (fmt) {
    case OutputFormat::csv:
      join(t.headers, ",");
      out << '\n';
      for (const auto& r : t.rows) {
        join(r, ",");
        out << '\n';
      }
      break;
    case OutputFormat::markdown:
      out << "| ";
      join(t.headers, " | ");
      out << " |\n|";
      for (std::size_t i = 0; i < t.headers.size(); ++i) out << "---|";
      out << '\n';
      for (const auto& r : t.rows) {
        out << "| ";
        join(r, " | ");
        out << " |\n";
      }
      break;
    case OutputFormat::human: {
      std::vector<std::size_t> w(t.headers.size(), 0);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.headers[i].size();
      for (const auto& r : t.rows)
        for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (i) out << "  ";
          out << cells[i];
          if (i + 1 < cells.size()) out << std::string(w[i] - cells[i].size(), ' ');
        }
        out << '\n';
      };
      line(t.headers);
      for (const auto& r : t.rows) line(r);
      break;
    }
  }
}

}  // namespace stringprime
