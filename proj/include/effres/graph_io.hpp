// graph_io.hpp - plain-text edge list ("er-graph v1") and dense matrix files.
//
//   er-graph v1 n=<n> m=<m>
//   # free-form comment lines (generator metadata)
//   <u> <v>        one edge per line, u < v, ascending lexicographic order
#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "effres/error.hpp"
#include "effres/graph.hpp"
#include "effres/matrices.hpp"

namespace effres {

struct GraphFile {
  Graph graph;
  std::vector<std::string> comments;  // without the leading "# "
};

namespace detail {

[[noreturn]] inline void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

inline void write_graph(std::ostream& os, const Graph& g, const std::vector<std::string>& comments = {}) {
  os << "er-graph v1 n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline std::string graph_to_string(const Graph& g, const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  write_graph(os, g, comments);
  return os.str();
}

inline GraphFile read_graph(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0, m = 0;
  bool have_header = false;
  GraphFile out;
  std::vector<EdgeId> edges;
  while (std::getline(is, line)) {
    ++lineno;
    const auto text = detail::trim(line);
    if (!have_header) {
      const auto parts = detail::split_ws(text);
      if (parts.size() != 4 || parts[0] != "er-graph" || parts[1] != "v1" ||
          parts[2].substr(0, 2) != "n=" || parts[3].substr(0, 2) != "m=" ||
          !detail::parse_number(parts[2].substr(2), n) || !detail::parse_number(parts[3].substr(2), m)) {
        detail::parse_error(lineno, "expected header 'er-graph v1 n=<n> m=<m>'");
      }
      have_header = true;
      continue;
    }
    if (text.empty()) continue;
    if (text.front() == '#') {
      auto body = text.substr(1);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      out.comments.emplace_back(body);
      continue;
    }
    const auto parts = detail::split_ws(text);
    std::uint64_t u = 0, v = 0;
    if (parts.size() != 2 || !detail::parse_number(parts[0], u) || !detail::parse_number(parts[1], v)) {
      detail::parse_error(lineno, "expected '<u> <v>'");
    }
    if (u >= v) detail::parse_error(lineno, "edge must satisfy u < v");
    if (v >= n) detail::parse_error(lineno, "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n));
    const EdgeId e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!edges.empty() && !(edges.back() < e)) {
      detail::parse_error(lineno, "edges must be strictly ascending");
    }
    edges.push_back(e);
  }
  if (!have_header) detail::parse_error(lineno, "missing header");
  if (edges.size() != m) {
    detail::parse_error(lineno, "declared m=" + std::to_string(m) + " but found " + std::to_string(edges.size()));
  }
  out.graph = Graph::from_edge_ids(n, std::move(edges));
  return out;
}

inline GraphFile graph_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_graph(is);
}

/// Dense matrix: a "<rows> <cols>" line, then one whitespace-separated row
/// per line. '#' lines are ignored.
inline Matrix read_matrix(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  long rows = -1, cols = -1;
  Matrix a;
  long filled = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    std::istringstream ls{std::string(text)};
    if (rows < 0) {
      if (!(ls >> rows >> cols) || rows < 0 || cols < 0) detail::parse_error(lineno, "expected '<rows> <cols>'");
      a = Matrix::Zero(rows, cols);
      continue;
    }
    if (filled >= rows) detail::parse_error(lineno, "more rows than declared");
    for (long j = 0; j < cols; ++j) {
      if (!(ls >> a(filled, j))) detail::parse_error(lineno, "row has fewer than " + std::to_string(cols) + " entries");
    }
    std::string rest;
    if (ls >> rest) detail::parse_error(lineno, "row has more than " + std::to_string(cols) + " entries");
    ++filled;
  }
  if (rows < 0) detail::parse_error(lineno, "missing dimensions");
  if (filled != rows) detail::parse_error(lineno, "declared " + std::to_string(rows) + " rows, found " + std::to_string(filled));
  return a;
}

inline void write_matrix(std::ostream& os, const Matrix& a) {
  os << a.rows() << ' ' << a.cols() << '\n';
  os.precision(17);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j);
    os << '\n';
  }
}

}  // namespace effres
