#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "twbb/graph.hpp"

namespace twbb {

enum class LowerBoundKind { MinWidth, Mcs, MinorMinWidth };

inline std::string_view to_string(LowerBoundKind k) {
  switch (k) {
    case LowerBoundKind::MinWidth: return "mw";
    case LowerBoundKind::Mcs: return "mcslb";
    case LowerBoundKind::MinorMinWidth: return "mmw";
  }
  return "?";
}

/// One selection event: the vertex picked, its contraction partner (minor-min-width
/// only) and the degree/count that fed the bound.
struct LowerBoundStep {
  Vertex vertex = 0;
  std::optional<Vertex> partner;
  int degree = 0;
};

struct LowerBoundResult {
  int value = 0;
  std::vector<LowerBoundStep> trace;
};

namespace detail {

inline Vertex min_degree_vertex(const VertexSet& among, const std::vector<int>& deg) {
  Vertex best = 0;
  int best_deg = std::numeric_limits<int>::max();
  for (Vertex v : among) {
    if (deg[v] < best_deg) {
      best_deg = deg[v];
      best = v;
    }
  }
  return best;
}

inline std::vector<int> degrees(const Graph& g) {
  std::vector<int> deg(g.capacity(), 0);
  for (Vertex v : g.active()) deg[v] = static_cast<int>(g.degree(v));
  return deg;
}

}  // namespace detail

/// Degeneracy bound: repeatedly delete a minimum-degree vertex; the largest
/// degree seen at deletion time.
inline LowerBoundResult minwidth_lb(const Graph& g, bool with_trace = false) {
  Graph h = g;
  std::vector<int> deg = detail::degrees(h);
  LowerBoundResult r;
  while (h.num_vertices() > 0) {
    const Vertex v = detail::min_degree_vertex(h.active(), deg);
    r.value = std::max(r.value, deg[v]);
    if (with_trace) r.trace.push_back({v, std::nullopt, deg[v]});
    for (Vertex u : h.neighbors(v)) --deg[u];
    h.remove_vertex(v);
  }
  return r;
}

/// Maximum-cardinality-search bound from `start`: the most previously visited
/// neighbours any vertex has when it is visited.
inline LowerBoundResult mcs_lb(const Graph& g, Vertex start, bool with_trace = false) {
  if (!g.contains(start)) throw ContractViolation("mcs_lb: start vertex is not active");
  std::vector<int> visited_nbrs(g.capacity(), 0);
  VertexSet unvisited = g.active();
  LowerBoundResult r;
  Vertex next = start;
  while (true) {
    r.value = std::max(r.value, visited_nbrs[next]);
    if (with_trace) r.trace.push_back({next, std::nullopt, visited_nbrs[next]});
    unvisited.erase(next);
    for (Vertex u : g.neighbors(next)) ++visited_nbrs[u];
    if (unvisited.empty()) break;
    int best = -1;
    for (Vertex v : unvisited) {
      if (visited_nbrs[v] > best) {
        best = visited_nbrs[v];
        next = v;
      }
    }
  }
  return r;
}

/// Best MCS bound over the first `restarts` active vertices as start points.
inline LowerBoundResult mcs_lb_restarts(const Graph& g, int restarts) {
  LowerBoundResult best;
  int tried = 0;
  for (Vertex s : g.active()) {
    if (tried++ >= std::max(restarts, 1)) break;
    LowerBoundResult r = mcs_lb(g, s);
    if (r.value > best.value) best = std::move(r);
  }
  return best;
}

/// Minor-min-width: contract a minimum-degree vertex v into its minimum-degree
/// neighbour until nothing is left, tracking the largest min degree. The
/// degree is read before the contraction; isolated vertices are deleted.
/// Ties go to the lowest id; v keeps its id.
inline LowerBoundResult minor_min_width(const Graph& g, bool with_trace = false) {
  Graph h = g;
  std::vector<int> deg = detail::degrees(h);
  LowerBoundResult r;
  while (h.num_vertices() > 0) {
    const Vertex v = detail::min_degree_vertex(h.active(), deg);
    r.value = std::max(r.value, deg[v]);
    if (deg[v] == 0) {
      if (with_trace) r.trace.push_back({v, std::nullopt, 0});
      h.remove_vertex(v);
      continue;
    }
    const Vertex u = detail::min_degree_vertex(h.neighbors(v), deg);
    if (with_trace) r.trace.push_back({v, u, deg[v]});
    const VertexSet& nv = h.neighbors(v);
    for (Vertex w : h.neighbors(u)) {
      if (w != v && nv.contains(w)) --deg[w];
    }
    h.contract_edge(v, u);
    deg[v] = static_cast<int>(h.degree(v));
  }
  return r;
}

/// The h value the search uses for a state graph.
inline int state_lower_bound(const Graph& g) { return minor_min_width(g).value; }

inline int lower_bound(const Graph& g, LowerBoundKind kind, int mcs_restarts = 1) {
  if (g.num_vertices() == 0) return 0;
  switch (kind) {
    case LowerBoundKind::MinWidth: return minwidth_lb(g).value;
    case LowerBoundKind::Mcs: return mcs_lb_restarts(g, mcs_restarts).value;
    case LowerBoundKind::MinorMinWidth: return minor_min_width(g).value;
  }
  return 0;
}

}  // namespace twbb
