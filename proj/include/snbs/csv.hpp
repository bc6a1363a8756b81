#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "snbs/errors.hpp"

namespace snbs {

// Reals are serialized with 17 significant digits so a write/read round
// trip is exact.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view strip_line(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

inline double parse_real(std::string_view token, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw CsvParseError("not a number: '" + std::string(token) + "'", line);
  }
  return v;
}

}  // namespace detail

// Reads a one-value-per-line series file (LF or CRLF). Blank lines at the
// end are tolerated; anything non-numeric reports its line number.
inline std::vector<double> read_series_csv(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto token = detail::strip_line(line);
    if (token.empty()) continue;
    const double v = detail::parse_real(token, line_no);
    if (!std::isfinite(v)) {
      throw CsvParseError("non-finite value", line_no);
    }
    out.push_back(v);
  }
  return out;
}

inline std::vector<double> read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvParseError("cannot open file: " + path, 0);
  return read_series_csv(in);
}

// Reads an ACF file with "lag,value" per line; lags must be contiguous
// from 0.
inline std::vector<double> read_acf_csv(std::istream& in) {
  std::vector<double> gamma;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto token = detail::strip_line(line);
    if (token.empty()) continue;
    const auto comma = token.find(',');
    if (comma == std::string_view::npos) {
      throw CsvParseError("expected 'lag,value'", line_no);
    }
    const double lag = detail::parse_real(token.substr(0, comma), line_no);
    const double val = detail::parse_real(token.substr(comma + 1), line_no);
    if (lag != static_cast<double>(gamma.size())) {
      throw CsvParseError("lags must be contiguous starting at 0", line_no);
    }
    gamma.push_back(val);
  }
  if (gamma.empty()) throw CsvParseError("empty ACF file", 0);
  return gamma;
}

inline std::vector<double> read_acf_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvParseError("cannot open file: " + path, 0);
  return read_acf_csv(in);
}

// Flat key=value config file reader ('#' starts a comment line).
inline std::vector<std::pair<std::string, std::string>> read_kv_config(
    std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto token = detail::strip_line(line);
    if (token.empty() || token.front() == '#') continue;
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw CsvParseError("expected 'key=value'", line_no);
    }
    std::string key(detail::strip_line(token.substr(0, eq)));
    std::string value(detail::strip_line(token.substr(eq + 1)));
    if (key.empty()) throw CsvParseError("empty key", line_no);
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

}  // namespace snbs
