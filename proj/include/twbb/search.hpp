#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "twbb/graph.hpp"
#include "twbb/heuristics.hpp"
#include "twbb/lower_bounds.hpp"
#include "twbb/reduce.hpp"

namespace twbb {

/// Independent switches for every search rule; all on by default.
struct RuleToggles {
  bool reductions = true;             ///< simplicial / almost-simplicial elimination
  bool edge_addition = true;          ///< join pairs with ≥ ub + 1 common neighbours
  bool prune_sibling = true;          ///< explored-sibling pruning with neighbourhood snapshots
  bool prune_mutual = true;           ///< mutually (almost) simplicial candidate pairs
  bool prune_fill_subset = true;      ///< fill(A) ⊆ fill(B) dominance
  bool successor_restriction = true;  ///< only non-neighbours of the last eliminated vertex
};

/// One improvement of the incumbent.
struct TraceEntry {
  double elapsed = 0.0;
  int width = 0;
  EliminationOrder order;
};

struct SolverConfig {
  std::optional<double> time_limit;  ///< seconds; unset = run to completion
  std::uint64_t seed = 0;            ///< seeds the randomized upper-bound runs
  RuleToggles rules;
  HeuristicConfig ub_heuristic;
  LowerBoundKind lb_kind = LowerBoundKind::MinorMinWidth;
  int lb_restarts = 1;  ///< MCS start points when lb_kind == Mcs
  /// Warm start: used instead of the heuristic when set (must be a permutation).
  std::optional<EliminationOrder> initial_order;
  /// Called synchronously on every improvement of the global incumbent.
  std::function<void(const TraceEntry&)> on_improvement;
  /// Observed at node boundaries; setting it ends the run like a time-out.
  const std::atomic<bool>* cancel = nullptr;
};

struct RunReport {
  int best_width = 0;
  EliminationOrder best_order;
  int proven_lb = 0;         ///< root bound, or best_width once the search completed
  int root_lb = 0;           ///< lower bound known before branching
  int heuristic_width = 0;   ///< width of the initial upper bound
  bool optimal = false;
  std::uint64_t nodes_expanded = 0;
  double elapsed = 0.0;
  std::vector<TraceEntry> anytime_trace;
};

/// Exit status convention shared by the CLI: 0 optimal, 2 best-so-far only.
inline int exit_code(const RunReport& r) { return r.optimal ? 0 : 2; }

/// Explored sibling of an ancestor: vertex A, its neighbourhood where it was
/// branched on, and how many rule-added edges had touched A at that point.
struct ForbiddenEntry {
  Vertex vertex = 0;
  VertexSet snapshot;
  std::uint32_t touches = 0;
};

/// Persistent list so siblings share their ancestors' entries.
struct ForbiddenNode {
  ForbiddenEntry entry;
  std::shared_ptr<const ForbiddenNode> next;
};
using ForbiddenList = std::shared_ptr<const ForbiddenNode>;

inline ForbiddenList push_forbidden(ForbiddenList list, ForbiddenEntry e) {
  return std::make_shared<const ForbiddenNode>(ForbiddenNode{std::move(e), std::move(list)});
}

/// A node of the search tree.
struct SearchState {
  Graph graph;               ///< remaining (reduced, augmented) graph
  EliminationOrder prefix;   ///< committed vertices, including forced ones
  int g = 0;                 ///< width of the prefix
  int h = 0;                 ///< lower bound on the remaining graph
  int f = 0;                 ///< max(g, h, parent f)
  std::optional<Vertex> last;
  std::optional<VertexSet> last_neighbors;  ///< N(last) when it was eliminated
  ForbiddenList forbidden;
  /// Per vertex: edges added by the edge-addition rule on the path so far.
  std::shared_ptr<const std::vector<std::uint32_t>> touches;
  int depth = 0;

  std::uint32_t touch_count(Vertex v) const { return touches ? (*touches)[v] : 0; }
};

// ---------------------------------------------------------------------------
// Candidate filters

/// True when `candidate` repeats an explored sibling of an ancestor with an
/// unchanged neighbourhood: the snapshot matches the current N(candidate) and
/// no rule-added edge has touched the candidate since. Every vertex eliminated
/// in between was then non-adjacent to it, so eliminating it at the ancestor
/// instead yields the same triangulation.
inline bool prune_sibling_order(Vertex candidate, const SearchState& s) {
  for (const ForbiddenNode* n = s.forbidden.get(); n != nullptr; n = n->next.get()) {
    const ForbiddenEntry& e = n->entry;
    if (e.vertex != candidate) continue;
    if (e.touches == s.touch_count(candidate) && s.graph.neighbors(candidate) == e.snapshot) return true;
  }
  return false;
}

namespace detail {

/// Is `b` simplicial, or almost simplicial with degree ≤ gate, in elim(g, a)?
/// `ga` is that elimination graph.
inline bool reducible_after(const Graph& ga, Vertex b, int gate) {
  if (is_simplicial(ga, b)) return true;
  return static_cast<int>(ga.degree(b)) <= gate && is_almost_simplicial(ga, b);
}

/// Eliminating a then b costs the same as b then a.
inline bool swap_is_exact(const Graph& g, Vertex a, Vertex b) {
  if (!g.has_edge(a, b)) return true;
  const int m = static_cast<int>((g.neighbors(a) | g.neighbors(b)).size()) - 2;
  const int da = static_cast<int>(g.degree(a));
  const int db = static_cast<int>(g.degree(b));
  return std::max(da, m) == std::max(db, m);
}

}  // namespace detail

/// Keeps one candidate (the lowest id) from every group of candidates joined by
/// the mutual relation: eliminating A leaves B simplicial or almost simplicial
/// and vice versa. The almost-simplicial case is gated by degree ≤ max(lb,
/// degree of the vertex eliminated first), and adjacent pairs must have
/// equal elimination cost in either order.
inline std::vector<Vertex> prune_mutual_simplicial(const std::vector<Vertex>& candidates, const Graph& g, int lb) {
  const std::size_t c = candidates.size();
  if (c < 2) return candidates;
  std::vector<Graph> after;
  after.reserve(c);
  for (Vertex a : candidates) after.push_back(eliminate(g, a));

  // rel[i][j]: candidates[j] reducible after eliminating candidates[i].
  std::vector<std::vector<char>> rel(c, std::vector<char>(c, 0));
  for (std::size_t i = 0; i < c; ++i) {
    const Vertex a = candidates[i];
    const int gate = std::max(lb, static_cast<int>(g.degree(a)));
    for (std::size_t j = 0; j < c; ++j) {
      if (i != j) rel[i][j] = detail::reducible_after(after[i], candidates[j], gate) ? 1 : 0;
    }
  }
  std::vector<std::size_t> group(c);
  for (std::size_t i = 0; i < c; ++i) group[i] = i;
  auto find = [&](std::size_t x) {
    while (group[x] != x) x = group[x] = group[group[x]];
    return x;
  };
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i + 1; j < c; ++j)
      if (rel[i][j] && rel[j][i] && detail::swap_is_exact(g, candidates[i], candidates[j])) {
        const std::size_t ri = find(i);
        const std::size_t rj = find(j);
        if (ri != rj) group[std::max(ri, rj)] = std::min(ri, rj);
      }
  // Candidates are ascending, so each group's root is its lowest id.
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < c; ++i)
    if (find(i) == i) out.push_back(candidates[i]);
  return out;
}

/// Drops B whenever another candidate A has fill(A) ⊆ fill(B); equal fill sets
/// keep the lower id.
inline std::vector<Vertex> prune_fill_subset(const std::vector<Vertex>& candidates, const Graph& g) {
  const std::size_t c = candidates.size();
  if (c < 2) return candidates;
  std::vector<EdgeSet> fill;
  std::vector<VertexSet> span;  // endpoints of fill edges
  fill.reserve(c);
  span.reserve(c);
  for (Vertex v : candidates) {
    fill.push_back(fill_edges(g, v));
    VertexSet s(g.capacity());
    for (const Edge& e : fill.back()) {
      s.insert(e.u);
      s.insert(e.v);
    }
    span.push_back(std::move(s));
  }
  std::vector<Vertex> out;
  for (std::size_t b = 0; b < c; ++b) {
    bool dominated = false;
    for (std::size_t a = 0; a < c && !dominated; ++a) {
      if (a == b || fill[a].size() > fill[b].size()) continue;
      if (!span[a].is_subset_of(span[b])) continue;
      if (!fill[a].is_subset_of(fill[b])) continue;
      dominated = fill[a].size() < fill[b].size() || candidates[a] < candidates[b];
    }
    if (!dominated) out.push_back(candidates[b]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expansion

/// Branching candidates of `s` after successor restriction and the pruning
/// filters (explored siblings, mutual simplicial pairs, fill dominance).
inline std::vector<Vertex> branch_candidates(const SearchState& s, const SolverConfig& cfg) {
  VertexSet pool = s.graph.active();
  if (cfg.rules.successor_restriction && s.last_neighbors) {
    VertexSet rest = pool - *s.last_neighbors;
    if (!rest.empty()) pool = std::move(rest);
  }
  std::vector<Vertex> cands;
  for (Vertex v : pool) {
    if (cfg.rules.prune_sibling && prune_sibling_order(v, s)) continue;
    cands.push_back(v);
  }
  if (cfg.rules.prune_mutual) cands = prune_mutual_simplicial(cands, s.graph, s.f);
  if (cfg.rules.prune_fill_subset) cands = prune_fill_subset(cands, s.graph);
  return cands;
}

/// Child of `s` that eliminates v, with reductions and edge addition applied
/// for target width < ub. When the bound already reaches ub the reductions
/// are skipped; only `f` is then meaningful.
inline SearchState make_child(const SearchState& s, Vertex v, int ub, const SolverConfig& cfg) {
  SearchState c;
  c.depth = s.depth + 1;
  c.touches = s.touches;
  const int deg = static_cast<int>(s.graph.degree(v));
  c.last = v;
  c.last_neighbors = s.graph.neighbors(v);
  c.graph = eliminate(s.graph, v);
  c.g = std::max(s.g, deg);
  c.prefix = s.prefix;
  c.prefix.push_back(v);

  const int h0 = lower_bound(c.graph, cfg.lb_kind, cfg.lb_restarts);
  const int lb = std::max({s.f, c.g, h0});
  c.h = h0;
  c.f = lb;
  if (lb >= ub) return c;

  if (cfg.rules.reductions || cfg.rules.edge_addition) {
    ReductionOutcome r =
        reduce_state(std::move(c.graph), c.g, lb, ub, cfg.rules.reductions, cfg.rules.edge_addition);
    c.graph = std::move(r.graph);
    c.g = r.g_value;
    for (Vertex x : r.forced_prefix.vertices) c.prefix.push_back(x);
    if (!r.forced_prefix.empty()) {
      c.last = r.forced_prefix.vertices.back();
      c.last_neighbors = std::move(r.last_neighbors);
    }
    if (!r.edges_added.empty()) {
      auto t = s.touches ? std::make_shared<std::vector<std::uint32_t>>(*s.touches)
                         : std::make_shared<std::vector<std::uint32_t>>(s.graph.capacity(), 0);
      for (const Edge& e : r.edges_added) {
        ++(*t)[e.u];
        ++(*t)[e.v];
      }
      c.touches = std::move(t);
    }
    if (!r.forced_prefix.empty() || !r.edges_added.empty())
      c.h = std::max(h0, lower_bound(c.graph, cfg.lb_kind, cfg.lb_restarts));
  }
  c.f = std::max({s.f, c.g, c.h});
  return c;
}

/// Children of `s` with f < ub, ordered by ascending f then vertex id.
inline std::vector<SearchState> expand(const SearchState& s, int ub, const SolverConfig& cfg) {
  std::vector<SearchState> out;
  if (s.graph.num_vertices() < 2) return out;
  for (Vertex v : branch_candidates(s, cfg)) {
    SearchState c = make_child(s, v, ub, cfg);
    if (c.f < ub) out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const SearchState& a, const SearchState& b) {
    return a.f < b.f || (a.f == b.f && *a.last < *b.last);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Driver

namespace detail {

using Clock = std::chrono::steady_clock;

struct ComponentResult {
  int best_width = 0;
  EliminationOrder best_order;
  int root_lb = 0;
  bool optimal = false;
  std::uint64_t nodes = 0;
};

class Search {
 public:
  Search(const Graph& g, const SolverConfig& cfg, Clock::time_point deadline, bool has_deadline,
         std::function<void(int, const EliminationOrder&)> improved)
      : graph_(g), cfg_(cfg), deadline_(deadline), has_deadline_(has_deadline), improved_(std::move(improved)) {}

  ComponentResult run(UpperBound initial) {
    ComponentResult res;
    res.best_width = initial.width;
    res.best_order = std::move(initial.order);
    ub_ = res.best_width;
    result_ = &res;

    SearchState root;
    root.graph = graph_;
    root.h = lower_bound(graph_, cfg_.lb_kind, cfg_.lb_restarts);
    root.f = root.h;
    if (root.f < ub_ && (cfg_.rules.reductions || cfg_.rules.edge_addition)) {
      ReductionOutcome r = reduce_state(std::move(root.graph), 0, root.f, ub_, cfg_.rules.reductions,
                                        cfg_.rules.edge_addition);
      root.graph = std::move(r.graph);
      root.g = r.g_value;
      root.prefix = std::move(r.forced_prefix);
      if (!root.prefix.empty()) {
        root.last = root.prefix.vertices.back();
        root.last_neighbors = std::move(r.last_neighbors);
      }
      if (!r.edges_added.empty()) {
        auto t = std::make_shared<std::vector<std::uint32_t>>(graph_.capacity(), 0);
        for (const Edge& e : r.edges_added) {
          ++(*t)[e.u];
          ++(*t)[e.v];
        }
        root.touches = std::move(t);
      }
      root.h = std::max(root.h, lower_bound(root.graph, cfg_.lb_kind, cfg_.lb_restarts));
      root.f = std::max(root.g, root.h);
    }
    // Edge addition only preserves solutions below ub, so the root bound is
    // capped by the incumbent.
    res.root_lb = std::min(root.f, ub_);
    if (root.f >= ub_) {
      res.optimal = true;
      return res;
    }
    if (root.graph.num_vertices() < 2) {
      leaf(root);
      res.optimal = true;
      return res;
    }
    res.optimal = dfs(std::move(root));
    return res;
  }

 private:
  struct ChildRef {
    Vertex vertex;
    int f;
  };
  struct Frame {
    SearchState state;
    std::vector<ChildRef> children;
    std::size_t next = 0;
    ForbiddenList siblings;  // state's list plus entries for children already taken
  };

  bool out_of_time() const {
    if (cfg_.cancel != nullptr && cfg_.cancel->load(std::memory_order_relaxed)) return true;
    return has_deadline_ && Clock::now() >= deadline_;
  }

  void leaf(const SearchState& s) {
    EliminationOrder order = s.prefix;
    for (Vertex v : s.graph.active()) order.push_back(v);
    const int w = width_of_order(graph_, order);
    if (w >= ub_) return;
    ub_ = w;
    order.width = w;
    result_->best_width = w;
    result_->best_order = order;
    if (improved_) improved_(w, order);
  }

  /// Generates children, keeps (vertex, f) for those below ub and records
  /// forbidden entries for the rest. Returns false when nothing is left.
  bool open(Frame& fr) {
    ++result_->nodes;
    fr.siblings = fr.state.forbidden;
    for (Vertex v : branch_candidates(fr.state, cfg_)) {
      const SearchState c = make_child(fr.state, v, ub_, cfg_);
      if (c.f < ub_) {
        fr.children.push_back({v, c.f});
      } else if (cfg_.rules.prune_sibling) {
        fr.siblings = push_forbidden(fr.siblings, entry_for(fr.state, v));
      }
    }
    std::stable_sort(fr.children.begin(), fr.children.end(), [](const ChildRef& a, const ChildRef& b) {
      return a.f < b.f || (a.f == b.f && a.vertex < b.vertex);
    });
    return !fr.children.empty();
  }

  static ForbiddenEntry entry_for(const SearchState& s, Vertex v) {
    return ForbiddenEntry{v, s.graph.neighbors(v), s.touch_count(v)};
  }

  /// Returns true when the tree was exhausted (ub is optimal).
  bool dfs(SearchState root) {
    std::vector<Frame> stack;
    stack.push_back(Frame{std::move(root), {}, 0, nullptr});
    if (!open(stack.back())) return true;
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next >= top.children.size()) {
        stack.pop_back();
        continue;
      }
      const ChildRef ref = top.children[top.next++];
      ForbiddenList inherited = top.siblings;
      if (cfg_.rules.prune_sibling) top.siblings = push_forbidden(top.siblings, entry_for(top.state, ref.vertex));
      if (ref.f >= ub_) continue;
      if (out_of_time()) return false;

      SearchState child = make_child(top.state, ref.vertex, ub_, cfg_);
      if (child.f >= ub_) continue;
      child.forbidden = std::move(inherited);
      if (child.graph.num_vertices() < 2) {
        leaf(child);
        continue;
      }
      Frame fr{std::move(child), {}, 0, nullptr};
      if (open(fr)) stack.push_back(std::move(fr));
    }
    return true;
  }

  const Graph& graph_;
  const SolverConfig& cfg_;
  Clock::time_point deadline_;
  bool has_deadline_;
  std::function<void(int, const EliminationOrder&)> improved_;
  int ub_ = 0;
  ComponentResult* result_ = nullptr;
};

}  // namespace detail

/// Anytime exact treewidth. Each connected component is searched on its own;
/// the report combines them (max width, summed nodes, concatenated orders).
/// A time-out or cancellation returns the best order found with
/// optimal = false.
inline RunReport solve(const Graph& g, const SolverConfig& cfg = {}) {
  using detail::Clock;
  const auto start = Clock::now();
  const bool has_deadline = cfg.time_limit.has_value();
  const auto deadline =
      has_deadline ? start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*cfg.time_limit))
                   : Clock::time_point::max();
  auto since_start = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  if (cfg.initial_order) require_permutation(g, *cfg.initial_order, "solve");

  RunReport report;
  const auto comps = connected_components(g);
  std::vector<Graph> parts;
  std::vector<UpperBound> bests;
  HeuristicConfig hc = cfg.ub_heuristic;
  hc.seed = cfg.seed;
  for (const VertexSet& c : comps) {
    parts.push_back(induced_subgraph(g, c));
    UpperBound ub;
    if (cfg.initial_order) {
      for (Vertex v : cfg.initial_order->vertices)
        if (c.contains(v)) ub.order.push_back(v);
      ub.width = width_of_order(parts.back(), ub.order);
      ub.order.width = ub.width;
    } else {
      ub = best_upper_bound(parts.back(), hc);
    }
    bests.push_back(std::move(ub));
  }

  auto global = [&] {
    TraceEntry t;
    for (const UpperBound& b : bests) {
      t.width = std::max(t.width, b.width);
      t.order.vertices.insert(t.order.vertices.end(), b.order.vertices.begin(), b.order.vertices.end());
    }
    t.order.width = t.width;
    return t;
  };
  auto record = [&] {
    TraceEntry t = global();
    if (!report.anytime_trace.empty() && t.width >= report.anytime_trace.back().width) return;
    t.elapsed = since_start();
    if (cfg.on_improvement) cfg.on_improvement(t);
    report.anytime_trace.push_back(std::move(t));
  };
  record();
  report.heuristic_width = report.anytime_trace.back().width;

  bool all_optimal = true;
  int lower = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    detail::Search search(parts[i], cfg, deadline, has_deadline, [&](int w, const EliminationOrder& o) {
      bests[i].width = w;
      bests[i].order = o;
      record();
    });
    detail::ComponentResult r = search.run(bests[i]);
    report.nodes_expanded += r.nodes;
    report.root_lb = std::max(report.root_lb, r.root_lb);
    all_optimal = all_optimal && r.optimal;
    lower = std::max(lower, r.optimal ? r.best_width : r.root_lb);
  }

  const TraceEntry final_best = global();
  report.best_width = final_best.width;
  report.best_order = final_best.order;
  report.optimal = all_optimal;
  report.proven_lb = all_optimal ? report.best_width : lower;
  report.elapsed = since_start();
  return report;
}

}  // namespace twbb
