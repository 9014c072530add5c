#pragma once

#include <cstdint>
#include <vector>

#include "twbb/twbb.hpp"

namespace twbb::testing {

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

/// Every labelled graph on n vertices (all 2^(n(n-1)/2) edge subsets),
/// optionally only the connected ones.
inline std::vector<Graph> all_graphs(std::size_t n, bool connected_only) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<Graph> out;
  const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    Graph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1U) g.add_edge(pairs[i].first, pairs[i].second);
    if (!connected_only || is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

/// G(n, p) with p = percent / 100; redrawn until connected when asked.
inline Graph random_graph(std::size_t n, int percent, Rng& rng, bool connected = false) {
  while (true) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.below(100) < static_cast<std::uint64_t>(percent)) g.add_edge(u, v);
    if (!connected || is_connected(g)) return g;
  }
}

/// Random connected graph with a density drawn from [15%, 85%].
inline Graph random_connected(std::size_t n, Rng& rng) {
  return random_graph(n, 15 + static_cast<int>(rng.below(71)), rng, true);
}

inline EliminationOrder random_order(const Graph& g, Rng& rng) {
  EliminationOrder o;
  o.vertices = g.active().to_vector();
  for (std::size_t i = o.vertices.size(); i > 1; --i)
    std::swap(o.vertices[i - 1], o.vertices[static_cast<std::size_t>(rng.below(i))]);
  return o;
}

/// Symmetric, loop free, confined to active vertices.
inline bool well_formed(const Graph& g) {
  for (Vertex v : g.active()) {
    const VertexSet& nv = g.neighbors(v);
    if (nv.contains(v) || !nv.is_subset_of(g.active())) return false;
    for (Vertex u : nv)
      if (!g.neighbors(u).contains(v)) return false;
  }
  return true;
}

/// The six single-rule-off configurations plus all-on, with labels.
struct NamedRules {
  const char* name;
  RuleToggles rules;
};

inline std::vector<NamedRules> rule_variants() {
  std::vector<NamedRules> out;
  out.push_back({"all-on", {}});
  RuleToggles r;
  r.reductions = false;
  out.push_back({"no-reduce", r});
  r = {};
  r.edge_addition = false;
  out.push_back({"no-edge-add", r});
  r = {};
  r.prune_sibling = false;
  out.push_back({"no-prune-sibling", r});
  r = {};
  r.prune_mutual = false;
  out.push_back({"no-prune-mutual", r});
  r = {};
  r.prune_fill_subset = false;
  out.push_back({"no-prune-fill", r});
  r = {};
  r.successor_restriction = false;
  out.push_back({"no-successor", r});
  return out;
}

}  // namespace twbb::testing
