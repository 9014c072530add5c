#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "twbb/graph.hpp"

namespace twbb {

struct OracleResult {
  int treewidth = 0;
  EliminationOrder witness_order;
};

namespace detail {

struct CompactGraph {
  std::vector<Vertex> ids;            // compact index -> original id
  std::vector<std::uint32_t> masks;   // compact adjacency
};

inline CompactGraph compact(const Graph& g) {
  CompactGraph c;
  c.ids = g.active().to_vector();
  std::vector<std::uint32_t> index(g.capacity(), 0);
  for (std::size_t i = 0; i < c.ids.size(); ++i) index[c.ids[i]] = static_cast<std::uint32_t>(i);
  c.masks.assign(c.ids.size(), 0);
  for (std::size_t i = 0; i < c.ids.size(); ++i)
    for (Vertex u : g.neighbors(c.ids[i])) c.masks[i] |= std::uint32_t{1} << index[u];
  return c;
}

}  // namespace detail

/// Exact treewidth by dynamic programming over vertex subsets.
///
/// opt(S) is the best width for eliminating S first; choosing v last within S
/// costs q(S \ {v}, v), the number of vertices outside S reachable from v
/// through S \ {v}. Refuses inputs above `limit` vertices (hard cap 24).
inline OracleResult exact_treewidth(const Graph& g, std::size_t limit = 14) {
  const std::size_t n = g.num_vertices();
  if (n > limit || n > 24)
    throw ContractViolation("exact_treewidth: " + std::to_string(n) + " vertices exceeds cap " +
                            std::to_string(std::min<std::size_t>(limit, 24)));
  if (n == 0) return {};
  const detail::CompactGraph c = detail::compact(g);
  const std::uint32_t all = n == 32 ? ~0U : ((std::uint32_t{1} << n) - 1);

  auto q = [&](std::uint32_t through, std::size_t v) {
    std::uint32_t reached = std::uint32_t{1} << v;
    std::uint32_t frontier = reached;
    std::uint32_t outside = 0;
    while (frontier != 0) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f != 0; f &= f - 1) next |= c.masks[static_cast<std::size_t>(std::countr_zero(f))];
      next &= ~reached;
      reached |= next;
      outside |= next & ~through;
      frontier = next & through;
    }
    return std::popcount(outside);
  };

  std::vector<std::uint8_t> opt(std::size_t{1} << n, 0);
  std::vector<std::uint8_t> last(std::size_t{1} << n, 0);
  for (std::uint32_t s = 1; s <= all && s != 0; ++s) {
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      const std::uint32_t prev = s & ~(std::uint32_t{1} << v);
      const int cand = std::max<int>(opt[prev], q(prev, v));
      if (cand < best) {
        best = cand;
        last[s] = static_cast<std::uint8_t>(v);
      }
    }
    opt[s] = static_cast<std::uint8_t>(best);
    if (s == all) break;
  }

  OracleResult r;
  r.treewidth = opt[all];
  std::vector<Vertex> rev;
  for (std::uint32_t s = all; s != 0; s &= ~(std::uint32_t{1} << last[s])) rev.push_back(c.ids[last[s]]);
  r.witness_order.vertices.assign(rev.rbegin(), rev.rend());
  r.witness_order.width = r.treewidth;
  return r;
}

/// Definitional oracle: minimum of width_of_order over all permutations,
/// enumerated depth-first so shared prefixes are eliminated once. n ≤ 9.
inline OracleResult exact_treewidth_permutations(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 9) throw ContractViolation("exact_treewidth_permutations: " + std::to_string(n) + " vertices exceeds cap 9");
  OracleResult best;
  best.treewidth = std::numeric_limits<int>::max();
  if (n == 0) return OracleResult{};
  std::vector<Vertex> prefix;
  auto rec = [&](auto&& self, const Graph& h, int width) -> void {
    if (h.num_vertices() == 0) {
      if (width < best.treewidth) {
        best.treewidth = width;
        best.witness_order.vertices = prefix;
      }
      return;
    }
    for (Vertex v : h.active()) {
      prefix.push_back(v);
      self(self, eliminate(h, v), std::max(width, static_cast<int>(h.degree(v))));
      prefix.pop_back();
    }
  };
  rec(rec, g, 0);
  best.witness_order.width = best.treewidth;
  return best;
}

}  // namespace twbb
