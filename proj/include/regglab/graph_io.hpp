#pragma once

// Edge-list text format:
//   n m
//   u v      (m lines, 0 <= u < v < n, ASCII decimal, LF-terminated)

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "regglab/errors.hpp"
#include "regglab/graph.hpp"

namespace regglab {

namespace detail {

inline std::vector<long long> parse_int_line(std::string_view line, int line_no, std::size_t expected) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    long long x = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), x);
    if (ec != std::errc() || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t')) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected integers, got '" + std::string(line) + "'");
    }
    out.push_back(x);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  if (out.size() != expected) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                                    " integers, got " + std::to_string(out.size()));
  }
  return out;
}

}  // namespace detail

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "line 1: missing header 'n m'");
  auto header = detail::parse_int_line(line, line_no, 2);
  const long long n = header[0], m = header[1];
  if (n < 1 || n > 10000) fail(ErrorCode::ParseError, "line 1: n out of range [1, 10000]");
  if (m < 0 || m > n * (n - 1) / 2) fail(ErrorCode::ParseError, "line 1: m out of range");

  Graph g(static_cast<int>(n));
  for (long long e = 0; e < m; ++e) {
    ++line_no;
    if (!std::getline(in, line)) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected edge " + std::to_string(e + 1) +
                                      " of " + std::to_string(m));
    }
    auto uv = detail::parse_int_line(line, line_no, 2);
    const long long u = uv[0], v = uv[1];
    if (u < 0 || v >= n || u >= v) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": need 0 <= u < v < n");
    }
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": duplicate edge");
    }
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": trailing content after edge list");
    }
  }
  return g;
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  return read_edge_list(in);
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

/// One-line label such as "0-1 2-3".
inline std::string to_edge_string(const Graph& g) {
  std::string s;
  for (auto [u, v] : g.edges()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(u) + '-' + std::to_string(v);
  }
  return s;
}

}  // namespace regglab
