#include <gtest/gtest.h>

#include "support.hpp"

namespace twbb {
namespace {

using testing::all_graphs;
using testing::random_connected;
using testing::random_graph;

int tw(const Graph& g) { return exact_treewidth(g).treewidth; }

TEST(ApplyReductions, Examples) {
  const ReductionOutcome k = apply_reductions(complete_graph(5), 0, 0);
  EXPECT_EQ(k.graph.num_vertices(), 0U);
  EXPECT_EQ(k.g_value, 4);
  EXPECT_EQ(k.forced_prefix.size(), 5U);

  const ReductionOutcome c2 = apply_reductions(cycle_graph(6), 0, 2);
  EXPECT_EQ(c2.graph.num_vertices(), 0U);
  EXPECT_EQ(c2.g_value, 2);
  EXPECT_EQ(c2.forced_prefix.vertices.front(), 0U);

  const ReductionOutcome c1 = apply_reductions(cycle_graph(6), 0, 1);
  EXPECT_EQ(c1.graph, cycle_graph(6));
  EXPECT_TRUE(c1.forced_prefix.empty());
  EXPECT_EQ(c1.g_value, 0);
}

TEST(ApplyReductions, PrefixMatchesEliminations) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(10, static_cast<int>(rng.below(90)), rng);
    const int lb = minor_min_width(g).value;
    const ReductionOutcome r = apply_reductions(g, 0, lb);
    Graph h = g;
    int width = 0;
    for (Vertex v : r.forced_prefix.vertices) {
      ASSERT_TRUE(is_simplicial(h, v) || (is_almost_simplicial(h, v) && static_cast<int>(h.degree(v)) <= std::max(lb, width)));
      width = std::max(width, static_cast<int>(h.degree(v)));
      h.eliminate_vertex(v);
    }
    EXPECT_EQ(h, r.graph);
    EXPECT_EQ(width, r.g_value);
    EXPECT_LE(r.forced_prefix.size(), g.num_vertices());
    for (Vertex v : r.forced_prefix.vertices) EXPECT_FALSE(r.graph.contains(v));
  }
}

TEST(EdgeAddition, Examples) {
  const auto [k23, added] = edge_addition(complete_bipartite(2, 3), 2);
  EXPECT_TRUE(k23.has_edge(0, 1));
  EXPECT_EQ(added.edges(), (std::vector<Edge>{Edge(0, 1)}));

  const auto [c5, none] = edge_addition(cycle_graph(5), 2);
  EXPECT_EQ(c5, cycle_graph(5));
  EXPECT_TRUE(none.empty());

  Graph k4e = complete_graph(4);
  k4e.remove_edge(0, 3);
  const auto [full, one] = edge_addition(k4e, 1);
  EXPECT_EQ(full, complete_graph(4));
  EXPECT_EQ(one.size(), 1U);
}

TEST(EdgeAddition, AddedEdgesAreNewAndPreserveTreewidth) {
  Rng rng(5);
  int total_added = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_graph(8, static_cast<int>(30 + rng.below(60)), rng);
    const int t = tw(g);
    for (int ub : {t + 1, t + 2}) {
      const auto [h, added] = edge_addition(g, ub);
      for (const Edge& e : added) {
        EXPECT_FALSE(g.has_edge(e.u, e.v));
        EXPECT_TRUE(h.has_edge(e.u, e.v));
      }
      EXPECT_EQ(h.num_edges(), g.num_edges() + added.size());
      EXPECT_EQ(tw(h), t);
      total_added += static_cast<int>(added.size());
    }
  }
  EXPECT_GT(total_added, 0);  // the property was exercised
}

TEST(Reductions, FixedPoints) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(12, static_cast<int>(rng.below(90)), rng);
    const int lb = minor_min_width(g).value;
    const ReductionOutcome once = apply_reductions(g, 0, lb);
    const ReductionOutcome twice = apply_reductions(once.graph, once.g_value, lb);
    EXPECT_EQ(twice.graph, once.graph);
    EXPECT_TRUE(twice.forced_prefix.empty());

    const int ub = *min_fill_order(g).width;
    const auto [a, added] = edge_addition(g, ub);
    const auto [b, again] = edge_addition(a, ub);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(again.empty());

    const ReductionOutcome joint = reduce_state(g, 0, lb, ub, true, true);
    const ReductionOutcome joint2 = reduce_state(joint.graph, joint.g_value, lb, ub, true, true);
    EXPECT_EQ(joint2.graph, joint.graph);
    EXPECT_TRUE(joint2.forced_prefix.empty());
    EXPECT_TRUE(joint2.edges_added.empty());
  }
}

void expect_answer_preserved(const Graph& g) {
  const int t = tw(g);
  const int lb = minor_min_width(g).value;
  const ReductionOutcome r = apply_reductions(g, 0, lb);
  ASSERT_EQ(std::max(r.g_value, tw(r.graph)), t);
  // Joint reduction is exact for every target above the optimum.
  for (int ub : {t + 1, t + 3}) {
    const ReductionOutcome j = reduce_state(g, 0, lb, ub, true, true);
    ASSERT_EQ(std::max(j.g_value, tw(j.graph)), t);
  }
}

TEST(Reductions, PreserveTreewidthOnAllSmallGraphs) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const Graph& g : all_graphs(n, true)) expect_answer_preserved(g);
}

TEST(Reductions, PreserveTreewidthOnRandomGraphs) {
  Rng rng(9);
  for (std::size_t n : {7U, 8U, 9U})
    for (int trial = 0; trial < 200; ++trial) expect_answer_preserved(random_connected(n, rng));
}

TEST(Reductions, ReduceStateRespectsSwitches) {
  const Graph g = complete_bipartite(2, 3);
  const ReductionOutcome off = reduce_state(g, 0, 2, 2, false, false);
  EXPECT_EQ(off.graph, g);
  const ReductionOutcome edges_only = reduce_state(g, 0, 2, 2, false, true);
  EXPECT_TRUE(edges_only.forced_prefix.empty());
  EXPECT_EQ(edges_only.edges_added.size(), 1U);
  const ReductionOutcome both = reduce_state(g, 0, 2, 2, true, true);
  EXPECT_EQ(both.graph.num_vertices(), 0U);
  EXPECT_EQ(both.g_value, 2);
}

}  // namespace
}  // namespace twbb
