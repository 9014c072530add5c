#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "twbb/graph.hpp"
#include "twbb/rng.hpp"

namespace twbb {

struct RandomGraphSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

struct PartialKTreeSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  int p = 0;  ///< percent of k-tree edges removed
  std::uint64_t seed = 0;
};

namespace detail {

/// m distinct indices from [0, universe), Floyd's sampling (ascending output).
inline std::vector<std::uint64_t> sample_indices(std::uint64_t universe, std::uint64_t m, Rng& rng) {
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  for (std::uint64_t j = universe - m; j < universe; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// G(n, m): m edges drawn uniformly without replacement from all n(n-1)/2
/// pairs. Connectivity is not enforced.
inline Graph gen_random(const RandomGraphSpec& spec) {
  const std::uint64_t pairs = spec.n < 2 ? 0 : static_cast<std::uint64_t>(spec.n) * (spec.n - 1) / 2;
  if (spec.m > pairs)
    throw ContractViolation("gen_random: m = " + std::to_string(spec.m) + " exceeds " + std::to_string(pairs) + " pairs");
  Rng rng(spec.seed);
  Graph g(spec.n);
  const auto picks = detail::sample_indices(pairs, spec.m, rng);
  // Index k enumerates pairs row by row: (0,1), (0,2), ..., (1,2), ...
  std::uint64_t row_start = 0;
  Vertex u = 0;
  for (std::uint64_t k : picks) {
    while (k >= row_start + (spec.n - 1 - u)) {
      row_start += spec.n - 1 - u;
      ++u;
    }
    g.add_edge(u, static_cast<Vertex>(u + 1 + (k - row_start)));
  }
  return g;
}

/// Random k-tree on n vertices (K_{k+1}, then each new vertex joined to a
/// uniformly chosen k-clique created so far), minus floor(p% of its edges)
/// removed uniformly.
inline Graph gen_partial_ktree(const PartialKTreeSpec& spec) {
  if (spec.n < spec.k + 1) throw ContractViolation("gen_partial_ktree: need n >= k + 1");
  if (spec.p < 0 || spec.p > 100) throw ContractViolation("gen_partial_ktree: p must be in [0, 100]");
  Rng rng(spec.seed);
  Graph g(spec.n);
  const auto k = static_cast<Vertex>(spec.k);
  for (Vertex a = 0; a <= k; ++a)
    for (Vertex b = a + 1; b <= k; ++b) g.add_edge(a, b);
  std::vector<std::vector<Vertex>> cliques;
  for (Vertex skip = 0; skip <= k; ++skip) {
    std::vector<Vertex> c;
    for (Vertex a = 0; a <= k; ++a)
      if (a != skip) c.push_back(a);
    cliques.push_back(std::move(c));
  }
  for (auto v = static_cast<Vertex>(k + 1); v < spec.n; ++v) {
    const std::vector<Vertex> base = cliques[static_cast<std::size_t>(rng.below(cliques.size()))];
    for (Vertex u : base) g.add_edge(v, u);
    for (std::size_t drop = 0; drop < base.size(); ++drop) {
      std::vector<Vertex> c;
      for (std::size_t i = 0; i < base.size(); ++i)
        if (i != drop) c.push_back(base[i]);
      c.push_back(v);
      cliques.push_back(std::move(c));
    }
  }
  const auto edges = g.edges();
  const std::uint64_t removals = static_cast<std::uint64_t>(edges.size()) * static_cast<std::uint64_t>(spec.p) / 100;
  for (std::uint64_t idx : detail::sample_indices(edges.size(), removals, rng)) {
    const Edge& e = edges[static_cast<std::size_t>(idx)];
    g.remove_edge(e.u, e.v);
  }
  return g;
}

// Fixed families used by tests, examples and the benchmark fixtures.

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(0, static_cast<Vertex>(n - 1));
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

/// K_{a,b}: vertices 0..a-1 on one side, a..a+b-1 on the other.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (auto v = static_cast<Vertex>(a); v < a + b; ++v) g.add_edge(u, v);
  return g;
}

/// K_{1,n} with centre 0.
inline Graph star_graph(std::size_t leaves) { return complete_bipartite(1, leaves); }

/// rows x cols grid, vertex r * cols + c.
inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  Graph g(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<Vertex>(r * cols + c);
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, static_cast<Vertex>(v + cols));
    }
  return g;
}

/// Mycielski graph in the DIMACS numbering convention: myciel(1) = K2 and
/// myciel(k + 1) is the Mycielskian of myciel(k) (myciel3 has 11 vertices,
/// myciel4 has 23).
inline Graph gen_mycielski(int k) {
  if (k < 1) throw ContractViolation("gen_mycielski: k must be >= 1");
  Graph g = complete_graph(2);
  for (int step = 1; step < k; ++step) {
    const auto n = static_cast<Vertex>(g.capacity());
    Graph h(2 * n + 1);
    for (const Edge& e : g.edges()) {
      h.add_edge(e.u, e.v);
      h.add_edge(e.u, n + e.v);
      h.add_edge(n + e.u, e.v);
    }
    for (Vertex i = 0; i < n; ++i) h.add_edge(n + i, 2 * n);
    g = std::move(h);
  }
  return g;
}

/// Queen graph on a rows x cols board: squares attack along rows, columns
/// and diagonals. Square (r, c) is vertex r * cols + c.
inline Graph gen_queen(std::size_t rows, std::size_t cols) {
  Graph g(rows * cols);
  for (std::size_t a = 0; a < rows * cols; ++a)
    for (std::size_t b = a + 1; b < rows * cols; ++b) {
      const auto ra = static_cast<long>(a / cols), ca = static_cast<long>(a % cols);
      const auto rb = static_cast<long>(b / cols), cb = static_cast<long>(b % cols);
      if (ra == rb || ca == cb || ra - ca == rb - cb || ra + ca == rb + cb)
        g.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
  return g;
}

}  // namespace twbb
