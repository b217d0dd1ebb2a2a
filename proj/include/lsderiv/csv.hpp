#pragma once

// Two-column (x, y) CSV reading and writing.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lsderiv/error.hpp"
#include "lsderiv/series.hpp"

namespace lsderiv {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

/// Shortest text that reads back to exactly `v`.
inline std::string format_real(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  return std::string(buf, ptr);
}

}  // namespace detail

/// Parses "x,y" rows with an optional header line. Rows are sorted by x;
/// repeated x values are rejected.
inline Series parse_csv(std::istream& in) {
  struct Row {
    double x;
    double y;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_commas(line);
    const bool first = !seen_content;
    seen_content = true;
    if (cells.size() != 2) {
      throw ParseError(line_no, std::min<std::size_t>(cells.size(), 3),
                       "expected 2 columns, found " + std::to_string(cells.size()));
    }
    const auto x = detail::parse_real(cells[0]);
    const auto y = detail::parse_real(cells[1]);
    if (first && !x && !y) continue;  // header
    if (!x) throw ParseError(line_no, 1, "not a number: '" + std::string(detail::trim(cells[0])) + "'");
    if (!y) throw ParseError(line_no, 2, "not a number: '" + std::string(detail::trim(cells[1])) + "'");
    rows.push_back({*x, *y, line_no});
  }
  if (rows.empty()) throw ParseError(std::max<std::size_t>(line_no, 1), 1, "no data rows");

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.x < b.x; });
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(rows.size());
  ys.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].x == rows[i - 1].x) {
      throw Error(ErrorCode::DuplicateTimestamp, "x = " + detail::format_real(rows[i].x) + " appears on lines " +
                                                     std::to_string(std::min(rows[i - 1].line, rows[i].line)) +
                                                     " and " +
                                                     std::to_string(std::max(rows[i - 1].line, rows[i].line)));
    }
    xs.push_back(rows[i].x);
    ys.push_back(rows[i].y);
  }
  return Series(std::move(xs), std::move(ys));
}

inline Series parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_csv(in);
}

inline Series ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return parse_csv(in);
}

inline void write_series_csv(std::ostream& out, const Series& series) {
  out << "x,y\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << detail::format_real(series.xs()[i]) << ',' << detail::format_real(series.ys()[i]) << '\n';
  }
}

}  // namespace lsderiv
