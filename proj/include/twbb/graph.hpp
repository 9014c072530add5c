#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twbb/elimination_order.hpp"
#include "twbb/errors.hpp"
#include "twbb/vertex_set.hpp"

namespace twbb {

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted, duplicate-free set of edges.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool contains(Edge e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }
  bool is_subset_of(const EdgeSet& other) const {
    return std::includes(other.edges_.begin(), other.edges_.end(), edges_.begin(), edges_.end());
  }
  void merge(const EdgeSet& other) {
    std::vector<Edge> out;
    out.reserve(edges_.size() + other.edges_.size());
    std::set_union(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end(),
                   std::back_inserter(out));
    edges_ = std::move(out);
  }

  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }
  const std::vector<Edge>& edges() const { return edges_; }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<Edge> edges_;
};

/// Simple undirected graph over stable vertex ids [0, capacity()).
///
/// Only ids in active() are present. Elimination and contraction deactivate
/// vertices instead of renumbering, so orders and reports keep the ids of the
/// original input. Adjacency is symmetric, loop free and confined to active
/// vertices.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : active_(VertexSet::full(n)), adj_(n, VertexSet(n)) {}

  std::size_t capacity() const { return adj_.size(); }
  std::size_t num_vertices() const { return active_.size(); }
  std::size_t num_edges() const {
    std::size_t twice = 0;
    active_.for_each([&](Vertex v) { twice += adj_[v].size(); });
    return twice / 2;
  }
  const VertexSet& active() const { return active_; }
  bool contains(Vertex v) const { return active_.contains(v); }

  const VertexSet& neighbors(Vertex v) const {
    require_active(v, "neighbors");
    return adj_[v];
  }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool has_edge(Vertex u, Vertex v) const { return contains(u) && adj_[u].contains(v); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    active_.for_each([&](Vertex u) {
      adj_[u].for_each([&](Vertex v) {
        if (u < v) out.emplace_back(u, v);
      });
    });
    return out;
  }

  /// Adds {u, v}; existing edges are kept as is.
  void add_edge(Vertex u, Vertex v) {
    require_active(u, "add_edge");
    require_active(v, "add_edge");
    if (u == v) throw ContractViolation("add_edge: self-loop on vertex " + std::to_string(u));
    adj_[u].insert(v);
    adj_[v].insert(u);
  }

  void remove_edge(Vertex u, Vertex v) {
    require_active(u, "remove_edge");
    require_active(v, "remove_edge");
    adj_[u].erase(v);
    adj_[v].erase(u);
  }

  /// Deletes v and its incident edges without adding fill.
  void remove_vertex(Vertex v) {
    require_active(v, "remove_vertex");
    adj_[v].for_each([&](Vertex u) { adj_[u].erase(v); });
    adj_[v].clear();
    active_.erase(v);
  }

  /// In-place elimination: pairwise-connect N(v), then remove v.
  void eliminate_vertex(Vertex v) {
    require_active(v, "eliminate");
    const VertexSet nv = adj_[v];
    nv.for_each([&](Vertex u) {
      adj_[u] |= nv;
      adj_[u].erase(u);
      adj_[u].erase(v);
    });
    adj_[v].clear();
    active_.erase(v);
  }

  /// In-place contraction of edge {keep, gone}; the merged vertex keeps id `keep`.
  void contract_edge(Vertex keep, Vertex gone) {
    require_active(keep, "contract");
    require_active(gone, "contract");
    if (!adj_[keep].contains(gone))
      throw ContractViolation("contract: vertices " + std::to_string(keep) + " and " +
                              std::to_string(gone) + " are not adjacent");
    adj_[gone].for_each([&](Vertex w) {
      adj_[w].erase(gone);
      if (w != keep) {
        adj_[w].insert(keep);
        adj_[keep].insert(w);
      }
    });
    adj_[gone].clear();
    active_.erase(gone);
  }

  /// Keeps only the vertices in `keep` (induced subgraph, ids unchanged).
  void restrict_to(const VertexSet& keep) {
    active_.for_each([&](Vertex v) {
      if (keep.contains(v)) {
        adj_[v] &= keep;
      } else {
        adj_[v].clear();
      }
    });
    active_ &= keep;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.capacity() != b.capacity() || a.active_ != b.active_) return false;
    for (Vertex v : a.active_)
      if (a.adj_[v] != b.adj_[v]) return false;
    return true;
  }

 private:
  void require_active(Vertex v, const char* op) const {
    if (!active_.contains(v))
      throw ContractViolation(std::string(op) + ": vertex " + std::to_string(v) + " is not active");
  }

  VertexSet active_;
  std::vector<VertexSet> adj_;
};

/// Builds a graph on n vertices from an edge list (duplicates merged).
inline Graph make_graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph eliminate(Graph g, Vertex v) {
  g.eliminate_vertex(v);
  return g;
}

/// Contracts edge {v, u}; v survives with neighborhood (N(v) ∪ N(u)) \ {u, v}.
inline Graph contract(Graph g, Vertex v, Vertex u) {
  g.contract_edge(v, u);
  return g;
}

namespace detail {

inline bool is_clique_except(const Graph& g, const VertexSet& s, Vertex skip, bool use_skip) {
  for (Vertex x : s) {
    if (use_skip && x == skip) continue;
    // s \ {x, skip} ⊆ N(x)
    VertexSet missing = s - g.neighbors(x);
    missing.erase(x);
    if (use_skip) missing.erase(skip);
    if (!missing.empty()) return false;
  }
  return true;
}

/// First non-adjacent pair inside N(v), if any.
inline bool find_missing_pair(const Graph& g, Vertex v, Vertex& a, Vertex& b) {
  const VertexSet& nv = g.neighbors(v);
  for (Vertex x : nv) {
    VertexSet missing = nv - g.neighbors(x);
    missing.erase(x);
    if (!missing.empty()) {
      a = x;
      b = missing.first();
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline bool is_simplicial(const Graph& g, Vertex v) {
  Vertex a = 0;
  Vertex b = 0;
  return !detail::find_missing_pair(g, v, a, b);
}

/// True when some u ∈ N(v) leaves N(v) \ {u} a clique. Simplicial vertices of
/// degree ≥ 1 qualify; isolated vertices do not.
inline bool is_almost_simplicial(const Graph& g, Vertex v) {
  const VertexSet& nv = g.neighbors(v);
  if (nv.empty()) return false;
  Vertex a = 0;
  Vertex b = 0;
  if (!detail::find_missing_pair(g, v, a, b)) return true;
  // Any witness must break the pair {a, b}.
  return detail::is_clique_except(g, nv, a, true) || detail::is_clique_except(g, nv, b, true);
}

/// Non-adjacent pairs inside N(v): the edges elim(g, v) would add.
inline EdgeSet fill_edges(const Graph& g, Vertex v) {
  std::vector<Edge> out;
  const VertexSet& nv = g.neighbors(v);
  for (Vertex x : nv) {
    VertexSet missing = nv - g.neighbors(x);
    missing.for_each([&](Vertex y) {
      if (x < y) out.emplace_back(x, y);
    });
  }
  return EdgeSet(std::move(out));
}

inline std::size_t fill_count(const Graph& g, Vertex v) {
  const VertexSet& nv = g.neighbors(v);
  const std::size_t d = nv.size();
  std::size_t inside = 0;
  for (Vertex x : nv) inside += nv.intersection_size(g.neighbors(x));
  return d * (d - (d > 0 ? 1 : 0)) / 2 - inside / 2;
}

inline VertexSet common_neighbors(const Graph& g, Vertex u, Vertex v) {
  if (u == v) throw ContractViolation("common_neighbors: u and v must differ");
  return g.neighbors(u) & g.neighbors(v);
}

/// Throws unless `order` lists every active vertex of g exactly once.
inline void require_permutation(const Graph& g, const EliminationOrder& order, const char* op) {
  if (order.size() != g.num_vertices())
    throw ContractViolation(std::string(op) + ": order has " + std::to_string(order.size()) +
                            " vertices, graph has " + std::to_string(g.num_vertices()));
  VertexSet seen(g.capacity());
  for (Vertex v : order.vertices) {
    if (!g.contains(v)) throw ContractViolation(std::string(op) + ": vertex " + std::to_string(v) + " not in graph");
    if (seen.contains(v)) throw ContractViolation(std::string(op) + ": vertex " + std::to_string(v) + " repeated");
    seen.insert(v);
  }
}

/// Max degree at elimination time along `order` (the width of the
/// triangulation the order induces).
inline int width_of_order(const Graph& g, const EliminationOrder& order) {
  require_permutation(g, order, "width_of_order");
  Graph h = g;
  int width = 0;
  for (Vertex v : order.vertices) {
    width = std::max(width, static_cast<int>(h.degree(v)));
    h.eliminate_vertex(v);
  }
  return width;
}

/// Components as vertex sets, ordered by smallest member.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> out;
  VertexSet unseen = g.active();
  while (!unseen.empty()) {
    VertexSet comp(g.capacity());
    VertexSet frontier(g.capacity());
    frontier.insert(unseen.first());
    while (!frontier.empty()) {
      comp |= frontier;
      unseen -= frontier;
      VertexSet next(g.capacity());
      frontier.for_each([&](Vertex v) { next |= g.neighbors(v); });
      next &= unseen;
      frontier = std::move(next);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

inline Graph induced_subgraph(Graph g, const VertexSet& keep) {
  g.restrict_to(keep);
  return g;
}

}  // namespace twbb
