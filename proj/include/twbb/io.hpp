#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "twbb/decomposition.hpp"
#include "twbb/errors.hpp"
#include "twbb/graph.hpp"

namespace twbb {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t to_uint(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return v;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    f(text.substr(pos, end - pos), lineno);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

/// Shared body of the two edge-list formats. `edge_tag` is the leading token
/// of an edge line ("e" for DIMACS), or empty when edge lines are bare pairs.
inline Graph parse_edge_list(std::string_view text, std::string_view format_word, std::string_view edge_tag,
                             std::vector<std::string>* warnings) {
  bool have_header = false;
  std::size_t n = 0;
  std::uint64_t declared_m = 0;
  std::uint64_t edge_lines = 0;
  Graph g;
  for_each_line(text, [&](std::string_view raw, std::size_t lineno) {
    const auto tok = split_ws(raw);
    if (tok.empty() || tok[0] == "c") return;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate 'p' header");
      if (tok.size() != 4 || tok[1] != format_word)
        throw ParseError(lineno, "malformed header, expected 'p " + std::string(format_word) + " <n> <m>'");
      n = static_cast<std::size_t>(to_uint(tok[2], lineno));
      declared_m = to_uint(tok[3], lineno);
      g = Graph(n);
      have_header = true;
      return;
    }
    std::size_t first = 0;
    if (!edge_tag.empty()) {
      if (tok[0] != edge_tag) throw ParseError(lineno, "unknown line type '" + std::string(tok[0]) + "'");
      first = 1;
    }
    if (!have_header) throw ParseError(lineno, "edge before 'p' header");
    if (tok.size() != first + 2) throw ParseError(lineno, "edge line needs exactly two endpoints");
    const std::uint64_t u = to_uint(tok[first], lineno);
    const std::uint64_t v = to_uint(tok[first + 1], lineno);
    if (u < 1 || u > n || v < 1 || v > n)
      throw ParseError(lineno, "endpoint out of range 1.." + std::to_string(n));
    if (u == v) throw ParseError(lineno, "self-loop on vertex " + std::to_string(u));
    g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    ++edge_lines;
  });
  if (!have_header) throw ParseError(0, "missing 'p " + std::string(format_word) + "' header");
  if (warnings != nullptr && edge_lines != declared_m)
    warnings->push_back("header declares " + std::to_string(declared_m) + " edges, file has " +
                        std::to_string(edge_lines) + " edge lines");
  return g;
}

}  // namespace detail

/// DIMACS coloring format: `c` comments, `p edge <n> <m>`, `e <u> <v>` (1-based).
/// Duplicate edges are merged; a header/edge-count mismatch is only a warning.
inline Graph parse_dimacs_col(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  return detail::parse_edge_list(text, "edge", "e", warnings);
}

/// PACE `.gr`: `p tw <n> <m>` then `<u> <v>` lines (1-based).
inline Graph parse_pace_gr(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  return detail::parse_edge_list(text, "tw", "", warnings);
}

/// Picks the parser from the first header line.
inline Graph parse_graph(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  bool pace = false;
  bool dimacs = false;
  detail::for_each_line(text, [&](std::string_view raw, std::size_t) {
    if (pace || dimacs) return;
    const auto tok = detail::split_ws(raw);
    if (tok.size() >= 2 && tok[0] == "p") {
      pace = tok[1] == "tw";
      dimacs = tok[1] == "edge";
    }
  });
  if (pace) return parse_pace_gr(text, warnings);
  if (dimacs) return parse_dimacs_col(text, warnings);
  throw ParseError(0, "unrecognised graph format (expected 'p tw' or 'p edge' header)");
}

inline std::string write_pace_gr(const Graph& g) {
  std::ostringstream os;
  const auto edges = g.edges();
  os << "p tw " << g.capacity() << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) os << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

inline std::string write_dimacs_col(const Graph& g) {
  std::ostringstream os;
  const auto edges = g.edges();
  os << "p edge " << g.capacity() << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) os << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

/// PACE `.td`: `s td <bags> <max bag size> <n>`, `b <id> <vertices...>`, then
/// `<i> <j>` tree edges; bag ids and vertices are 1-based.
inline std::string write_pace_td(const TreeDecomposition& td, std::size_t n) {
  std::ostringstream os;
  os << "s td " << td.bags.size() << ' ' << td.max_bag_size() << ' ' << n << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    os << "b " << i + 1;
    for (Vertex v : td.bags[i]) os << ' ' << v + 1;
    os << '\n';
  }
  for (auto [a, b] : td.tree_edges) os << a + 1 << ' ' << b + 1 << '\n';
  return os.str();
}

inline TreeDecomposition parse_pace_td(std::string_view text, std::size_t* n_out = nullptr) {
  TreeDecomposition td;
  bool have_header = false;
  std::size_t nbags = 0;
  std::size_t maxbag = 0;
  std::size_t n = 0;
  std::vector<bool> seen;
  detail::for_each_line(text, [&](std::string_view raw, std::size_t lineno) {
    const auto tok = detail::split_ws(raw);
    if (tok.empty() || tok[0] == "c") return;
    if (tok[0] == "s") {
      if (have_header) throw ParseError(lineno, "duplicate 's td' header");
      if (tok.size() != 5 || tok[1] != "td") throw ParseError(lineno, "malformed header, expected 's td <b> <w> <n>'");
      nbags = static_cast<std::size_t>(detail::to_uint(tok[2], lineno));
      maxbag = static_cast<std::size_t>(detail::to_uint(tok[3], lineno));
      n = static_cast<std::size_t>(detail::to_uint(tok[4], lineno));
      td.bags.resize(nbags);
      seen.assign(nbags, false);
      have_header = true;
      return;
    }
    if (!have_header) throw ParseError(lineno, "content before 's td' header");
    if (tok[0] == "b") {
      if (tok.size() < 2) throw ParseError(lineno, "bag line without id");
      const std::uint64_t id = detail::to_uint(tok[1], lineno);
      if (id < 1 || id > nbags) throw ParseError(lineno, "bag id out of range");
      if (seen[id - 1]) throw ParseError(lineno, "bag " + std::to_string(id) + " defined twice");
      seen[id - 1] = true;
      auto& bag = td.bags[id - 1];
      for (std::size_t k = 2; k < tok.size(); ++k) {
        const std::uint64_t v = detail::to_uint(tok[k], lineno);
        if (v < 1 || v > n) throw ParseError(lineno, "vertex out of range 1.." + std::to_string(n));
        bag.push_back(static_cast<Vertex>(v - 1));
      }
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
        throw ParseError(lineno, "repeated vertex in bag " + std::to_string(id));
      return;
    }
    if (tok.size() != 2) throw ParseError(lineno, "tree edge line needs two bag ids");
    const std::uint64_t a = detail::to_uint(tok[0], lineno);
    const std::uint64_t b = detail::to_uint(tok[1], lineno);
    if (a < 1 || a > nbags || b < 1 || b > nbags) throw ParseError(lineno, "tree edge references unknown bag");
    td.tree_edges.emplace_back(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
  });
  if (!have_header) throw ParseError(0, "missing 's td' header");
  for (std::size_t i = 0; i < nbags; ++i)
    if (!seen[i]) throw ParseError(0, "bag " + std::to_string(i + 1) + " never defined");
  if (td.max_bag_size() != maxbag)
    throw ParseError(0, "header max bag size " + std::to_string(maxbag) + " but largest bag has " +
                            std::to_string(td.max_bag_size()));
  td.width = nbags == 0 ? 0 : static_cast<int>(maxbag) - 1;
  if (n_out != nullptr) *n_out = n;
  return td;
}

}  // namespace twbb
