#pragma once

#include <algorithm>
#include <optional>
#include <utility>

#include "twbb/graph.hpp"

namespace twbb {

/// Result of reducing a search-state graph.
struct ReductionOutcome {
  Graph graph;
  EliminationOrder forced_prefix;  ///< eliminated vertices, in application order
  int g_value = 0;                 ///< incoming g MAX-ed with every eliminated degree
  EdgeSet edges_added;
  /// Neighbourhood of the last forced vertex when it was eliminated.
  std::optional<VertexSet> last_neighbors;
};

namespace detail {

/// Lowest-id vertex that may be eliminated without changing the optimum:
/// simplicial, or almost simplicial with degree ≤ lb.
inline std::optional<Vertex> find_reducible(const Graph& g, int lb) {
  for (Vertex v : g.active()) {
    if (is_simplicial(g, v)) return v;
    if (static_cast<int>(g.degree(v)) <= lb && is_almost_simplicial(g, v)) return v;
  }
  return std::nullopt;
}

inline bool reduce_step(ReductionOutcome& out, int lb) {
  const auto v = find_reducible(out.graph, std::max(lb, out.g_value));
  if (!v) return false;
  out.g_value = std::max(out.g_value, static_cast<int>(out.graph.degree(*v)));
  out.last_neighbors = out.graph.neighbors(*v);
  out.graph.eliminate_vertex(*v);
  out.forced_prefix.push_back(*v);
  return true;
}

}  // namespace detail

/// Repeatedly eliminates simplicial vertices and almost-simplicial vertices of
/// degree ≤ max(lb, g) (lowest id first, rescanning after every elimination).
/// `lb` must not exceed the best width reachable from this state.
inline ReductionOutcome apply_reductions(Graph g, int g_value, int lb) {
  ReductionOutcome out{std::move(g), {}, g_value, {}, std::nullopt};
  while (detail::reduce_step(out, lb)) {
  }
  return out;
}

/// Joins every non-adjacent pair with at least ub + 1 common neighbours,
/// iterating to a fixed point. Any ordering narrower than ub has these edges
/// in its triangulation, so searching for width < ub is unaffected.
inline std::pair<Graph, EdgeSet> edge_addition(Graph g, int ub) {
  std::vector<Edge> added;
  const std::size_t threshold = static_cast<std::size_t>(std::max(ub, 0)) + 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex u : g.active()) {
      if (g.degree(u) < threshold) continue;
      for (Vertex v = g.active().next(u + 1); v < g.capacity(); v = g.active().next(v + 1)) {
        if (g.has_edge(u, v) || g.degree(v) < threshold) continue;
        if (g.neighbors(u).intersection_size(g.neighbors(v)) >= threshold) {
          g.add_edge(u, v);
          added.emplace_back(u, v);
          changed = true;
        }
      }
    }
  }
  return {std::move(g), EdgeSet(std::move(added))};
}

/// Reductions and edge addition iterated to a joint fixed point.
inline ReductionOutcome reduce_state(Graph g, int g_value, int lb, int ub, bool reductions,
                                     bool add_edges) {
  ReductionOutcome out{std::move(g), {}, g_value, {}, std::nullopt};
  while (true) {
    if (reductions) {
      while (detail::reduce_step(out, lb)) {
      }
    }
    if (!add_edges) break;
    auto [augmented, edges] = edge_addition(std::move(out.graph), ub);
    out.graph = std::move(augmented);
    if (edges.empty()) break;
    out.edges_added.merge(edges);
    if (!reductions) break;
  }
  return out;
}

}  // namespace twbb
