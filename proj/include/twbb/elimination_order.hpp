#pragma once

#include <optional>
#include <vector>

#include "twbb/vertex_set.hpp"

namespace twbb {

/// A sequence of distinct vertex ids. When complete it is a permutation of
/// the active vertices of the graph it was built for; `width`, when present,
/// caches width_of_order on that graph.
struct EliminationOrder {
  std::vector<Vertex> vertices;
  std::optional<int> width = std::nullopt;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
  void push_back(Vertex v) { vertices.push_back(v); }

  friend bool operator==(const EliminationOrder&, const EliminationOrder&) = default;
};

}  // namespace twbb
