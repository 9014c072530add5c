#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "twbb/graph.hpp"
#include "twbb/rng.hpp"

namespace twbb {

enum class HeuristicKind { MinFill, MinWidth, MaxCardinality };

inline std::string_view to_string(HeuristicKind k) {
  switch (k) {
    case HeuristicKind::MinFill: return "minfill";
    case HeuristicKind::MinWidth: return "minwidth";
    case HeuristicKind::MaxCardinality: return "mcs";
  }
  return "?";
}

struct HeuristicConfig {
  HeuristicKind kind = HeuristicKind::MinFill;
  int runs = 100;
  std::uint64_t seed = 0;
};

struct UpperBound {
  int width = 0;
  EliminationOrder order;
};

namespace detail {

/// Picks from `candidates` (non-empty, ascending ids): the first one without
/// an rng, a uniform one otherwise.
inline Vertex pick(const std::vector<Vertex>& candidates, Rng* rng) {
  if (rng == nullptr) return candidates.front();
  return candidates[static_cast<std::size_t>(rng->below(candidates.size()))];
}

inline EliminationOrder with_width(const Graph& g, EliminationOrder order) {
  order.width = width_of_order(g, order);
  return order;
}

}  // namespace detail

/// Greedy minimum fill-in ordering. Ties go to the lowest id, or to a uniform
/// member of the argmin set when `rng` is given.
inline EliminationOrder min_fill_order(const Graph& g, Rng* rng = nullptr) {
  Graph h = g;
  EliminationOrder order;
  order.vertices.reserve(g.num_vertices());
  int width = 0;
  std::vector<Vertex> best;
  while (h.num_vertices() > 0) {
    std::size_t best_fill = std::numeric_limits<std::size_t>::max();
    best.clear();
    for (Vertex v : h.active()) {
      const std::size_t f = fill_count(h, v);
      if (f < best_fill) {
        best_fill = f;
        best.clear();
      }
      if (f == best_fill) best.push_back(v);
    }
    const Vertex v = detail::pick(best, rng);
    width = std::max(width, static_cast<int>(h.degree(v)));
    h.eliminate_vertex(v);
    order.push_back(v);
  }
  order.width = width;
  return order;
}

/// Min-degree ordering where chosen vertices are deleted without fill; the
/// cached width is still the true (filled) width of the resulting order.
inline EliminationOrder min_width_order(const Graph& g, Rng* rng = nullptr) {
  Graph h = g;
  EliminationOrder order;
  std::vector<Vertex> best;
  while (h.num_vertices() > 0) {
    std::size_t best_deg = std::numeric_limits<std::size_t>::max();
    best.clear();
    for (Vertex v : h.active()) {
      const std::size_t d = h.degree(v);
      if (d < best_deg) {
        best_deg = d;
        best.clear();
      }
      if (d == best_deg) best.push_back(v);
    }
    const Vertex v = detail::pick(best, rng);
    h.remove_vertex(v);
    order.push_back(v);
  }
  return detail::with_width(g, std::move(order));
}

/// Maximum cardinality search from `start`. The first labelled vertex takes
/// the last position; the returned order is the elimination order.
inline EliminationOrder max_cardinality_order(const Graph& g, Vertex start, Rng* rng = nullptr) {
  if (!g.contains(start)) throw ContractViolation("max_cardinality_order: start vertex is not active");
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> visit;
  visit.reserve(n);
  std::vector<int> labelled_nbrs(g.capacity(), 0);
  VertexSet unlabelled = g.active();
  std::vector<Vertex> best;
  Vertex next = start;
  while (true) {
    visit.push_back(next);
    unlabelled.erase(next);
    for (Vertex u : g.neighbors(next)) ++labelled_nbrs[u];
    if (unlabelled.empty()) break;
    int best_count = -1;
    best.clear();
    for (Vertex v : unlabelled) {
      if (labelled_nbrs[v] > best_count) {
        best_count = labelled_nbrs[v];
        best.clear();
      }
      if (labelled_nbrs[v] == best_count) best.push_back(v);
    }
    next = detail::pick(best, rng);
  }
  EliminationOrder order;
  order.vertices.assign(visit.rbegin(), visit.rend());
  return detail::with_width(g, std::move(order));
}

/// Runs the configured heuristic `cfg.runs` times and keeps the narrowest
/// order. Run 0 is the deterministic variant (lowest-id ties, start at the
/// lowest active id); run i ≥ 1 draws from Rng::stream(cfg.seed, i), so the
/// result never gets worse as `runs` grows.
inline UpperBound best_upper_bound(const Graph& g, const HeuristicConfig& cfg) {
  if (cfg.runs < 1) throw ContractViolation("best_upper_bound: runs must be >= 1");
  UpperBound best;
  best.width = std::numeric_limits<int>::max();
  if (g.num_vertices() == 0) return UpperBound{0, EliminationOrder{{}, 0}};
  const std::vector<Vertex> active = g.active().to_vector();
  for (int run = 0; run < cfg.runs; ++run) {
    std::optional<Rng> rng;
    if (run > 0) rng.emplace(Rng::stream(cfg.seed, static_cast<std::uint64_t>(run)));
    Rng* r = rng ? &*rng : nullptr;
    EliminationOrder order;
    switch (cfg.kind) {
      case HeuristicKind::MinFill: order = min_fill_order(g, r); break;
      case HeuristicKind::MinWidth: order = min_width_order(g, r); break;
      case HeuristicKind::MaxCardinality: {
        const Vertex start = r ? active[static_cast<std::size_t>(r->below(active.size()))] : active.front();
        order = max_cardinality_order(g, start, r);
        break;
      }
    }
    if (*order.width < best.width) {
      best.width = *order.width;
      best.order = std::move(order);
    }
  }
  return best;
}

}  // namespace twbb
