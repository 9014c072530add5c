#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "twbb/graph.hpp"
#include "twbb/heuristics.hpp"

namespace twbb {

/// Tree of bags. Bags hold sorted vertex ids; tree edges index into `bags`.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
  int width = 0;

  std::size_t max_bag_size() const {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return m;
  }
};

/// Fill-in along `order`: returns g plus every edge its elimination adds.
inline Graph triangulate(const Graph& g, const EliminationOrder& order) {
  require_permutation(g, order, "triangulate");
  Graph h = g;
  Graph work = g;
  for (Vertex v : order.vertices) {
    for (const Edge& e : fill_edges(work, v)) h.add_edge(e.u, e.v);
    work.eliminate_vertex(v);
  }
  return h;
}

namespace detail {

/// Neighbours of each vertex that come later in `order`.
inline std::vector<VertexSet> later_neighbors(const Graph& g, const EliminationOrder& order) {
  std::vector<VertexSet> later(g.capacity(), VertexSet(g.capacity()));
  VertexSet remaining = g.active();
  for (Vertex v : order.vertices) {
    remaining.erase(v);
    later[v] = g.neighbors(v) & remaining;
  }
  return later;
}

}  // namespace detail

/// True iff every vertex is simplicial among the vertices after it.
inline bool is_perfect_elimination_order(const Graph& g, const EliminationOrder& order) {
  require_permutation(g, order, "is_perfect_elimination_order");
  const auto later = detail::later_neighbors(g, order);
  for (Vertex v : order.vertices) {
    for (Vertex x : later[v]) {
      if (!later[v].is_subset_of_except(g.neighbors(x), x)) return false;
    }
  }
  return true;
}

/// Chordality via maximum cardinality search plus a PEO check.
inline bool is_chordal(const Graph& g) {
  if (g.num_vertices() == 0) return true;
  return is_perfect_elimination_order(g, max_cardinality_order(g, g.active().first()));
}

/// One bag per elimination position: bag(v) = {v} ∪ later neighbours of v in
/// the triangulation. bag(v) hangs off the bag of its earliest later
/// neighbour, or off the next bag in the order when it has none.
inline TreeDecomposition build_decomposition(const Graph& g, const EliminationOrder& order) {
  const Graph h = triangulate(g, order);
  const auto later = detail::later_neighbors(h, order);
  std::vector<std::size_t> pos(g.capacity(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order.vertices[i]] = i;

  TreeDecomposition td;
  td.bags.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex v = order.vertices[i];
    auto& bag = td.bags[i];
    bag = later[v].to_vector();
    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
    td.width = std::max(td.width, static_cast<int>(bag.size()) - 1);
    if (i + 1 == order.size()) continue;
    std::size_t parent = i + 1;
    if (!later[v].empty()) {
      parent = order.size();
      for (Vertex u : later[v]) parent = std::min(parent, pos[u]);
    }
    td.tree_edges.emplace_back(i, parent);
  }
  return td;
}

/// Merges every bag into an adjacent bag that contains it.
inline TreeDecomposition compress_decomposition(const TreeDecomposition& td) {
  const std::size_t n = td.bags.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j : adj[i]) {
        if (!std::includes(td.bags[j].begin(), td.bags[j].end(), td.bags[i].begin(), td.bags[i].end()))
          continue;
        // Fold i into j.
        for (std::size_t k : adj[i]) {
          if (k == j) continue;
          std::replace(adj[k].begin(), adj[k].end(), i, j);
          adj[j].push_back(k);
        }
        adj[j].erase(std::remove(adj[j].begin(), adj[j].end(), i), adj[j].end());
        adj[i].clear();
        alive[i] = false;
        changed = true;
        break;
      }
    }
  }
  std::vector<std::size_t> id(n, 0);
  TreeDecomposition out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    id[i] = out.bags.size();
    out.bags.push_back(td.bags[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j : adj[i])
      if (i < j) out.tree_edges.emplace_back(id[i], id[j]);
  }
  out.width = td.width;
  return out;
}

struct ValidationResult {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
};

/// Checks tree-ness, vertex coverage, edge coverage and the connected-subtree
/// property. The diagnostic names the first violation and a witness.
inline ValidationResult validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  auto fail = [](std::string msg) { return ValidationResult{false, std::move(msg)}; };
  const std::size_t nb = td.bags.size();

  // Tree shape.
  if (nb == 0) {
    if (g.num_vertices() != 0) return fail("coverage: no bags for a non-empty graph");
    if (!td.tree_edges.empty()) return fail("tree: edges without bags");
    return {};
  }
  if (td.tree_edges.size() != nb - 1)
    return fail("tree: " + std::to_string(td.tree_edges.size()) + " edges for " + std::to_string(nb) + " bags");
  std::vector<std::vector<std::size_t>> adj(nb);
  for (auto [a, b] : td.tree_edges) {
    if (a >= nb || b >= nb) return fail("tree: edge references unknown bag");
    if (a == b) return fail("tree: self-loop on bag " + std::to_string(a));
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  {
    std::vector<bool> seen(nb, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          ++reached;
          stack.push_back(y);
        }
    }
    if (reached != nb) return fail("tree: bag graph is disconnected");
  }

  // Bags per vertex.
  std::vector<VertexSet> holds(g.capacity(), VertexSet(nb));
  int max_bag = 0;
  for (std::size_t i = 0; i < nb; ++i) {
    max_bag = std::max(max_bag, static_cast<int>(td.bags[i].size()));
    for (Vertex v : td.bags[i]) {
      if (!g.contains(v)) return fail("bag " + std::to_string(i) + ": vertex " + std::to_string(v) + " not in graph");
      holds[v].insert(static_cast<Vertex>(i));
    }
  }
  for (Vertex v : g.active())
    if (holds[v].empty()) return fail("condition 1 (vertex coverage): vertex " + std::to_string(v) + " in no bag");
  for (const Edge& e : g.edges())
    if (!holds[e.u].intersects(holds[e.v]))
      return fail("condition 2 (edge coverage): edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                  " in no bag");
  for (Vertex v : g.active()) {
    const VertexSet& mine = holds[v];
    VertexSet seen(nb);
    std::vector<std::size_t> stack{mine.first()};
    seen.insert(mine.first());
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : adj[x])
        if (mine.contains(static_cast<Vertex>(y)) && !seen.contains(static_cast<Vertex>(y))) {
          seen.insert(static_cast<Vertex>(y));
          stack.push_back(y);
        }
    }
    if (seen != mine)
      return fail("condition 3 (connected subtree): bags holding vertex " + std::to_string(v) + " are disconnected");
  }
  if (td.width != max_bag - 1)
    return fail("width: declared " + std::to_string(td.width) + ", largest bag gives " + std::to_string(max_bag - 1));
  return {};
}

}  // namespace twbb
