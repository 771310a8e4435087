#include <gtest/gtest.h>

#include "dhs/multigraph.hpp"
#include "dhs/oracle.hpp"

using namespace dhs;

namespace {

WeightedMultiGraph triangle_with_pendant() {
  return graph_from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
}

}  // namespace

TEST(Blocks, TriangleWithPendantEdge) {
  const auto dec = blocks(triangle_with_pendant());
  ASSERT_EQ(dec.blocks.size(), 2u);
  EXPECT_EQ(dec.cutvertices, std::vector<VertexId>{2});
  std::size_t edges = 0;
  for (const auto& b : dec.blocks) edges += b.edges.size();
  EXPECT_EQ(edges, 4u);
}

TEST(Blocks, ParallelPairIsOneBlock) {
  const auto dec = blocks(graph_from_edges(2, {{0, 1}, {0, 1}}));
  ASSERT_EQ(dec.blocks.size(), 1u);
  EXPECT_EQ(dec.blocks[0].vertices.size(), 2u);
  EXPECT_EQ(dec.blocks[0].edges.size(), 2u);
  EXPECT_TRUE(dec.blocks[0].is_cycle_or_edge);
}

TEST(Blocks, CompleteGraphOnFourIsOneBlock) {
  const auto dec = blocks(complete_graph(4));
  ASSERT_EQ(dec.blocks.size(), 1u);
  EXPECT_TRUE(dec.cutvertices.empty());
  EXPECT_FALSE(dec.blocks[0].is_cycle_or_edge);
}

TEST(Blocks, IsolatedVertexOwnsABlock) {
  WeightedMultiGraph g;
  g.add_vertex();
  const auto dec = blocks(g);
  ASSERT_EQ(dec.blocks.size(), 1u);
  EXPECT_TRUE(dec.blocks[0].edges.empty());
}

TEST(Cacti, Recognition) {
  EXPECT_TRUE(is_forest_of_cacti(cycle_graph(3)));
  EXPECT_FALSE(is_forest_of_cacti(complete_graph(4)));
  EXPECT_FALSE(is_forest_of_cacti(graph_from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {3, 2}})));
  EXPECT_TRUE(is_forest_of_cacti(WeightedMultiGraph{}));
}

TEST(FindAnyDiamond, Examples) {
  EXPECT_FALSE(find_any_diamond(triangle_with_pendant()).has_value());
  const auto theta = theta_graph(1, 1, 1);
  auto d = find_any_diamond(theta);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->size(), 3u);
  EXPECT_TRUE(is_valid_diamond(theta, *d));

  const auto k4 = complete_graph(4);
  d = find_any_diamond(k4);
  ASSERT_TRUE(d);
  EXPECT_TRUE(is_valid_diamond(k4, *d));
  EXPECT_EQ(d->size(), 5u);
}

TEST(FindAnyDiamond, AgreesWithExhaustiveThetaSearch) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 9);
    const int m = static_cast<int>(seed % 13);
    const auto g = random_multigraph(n, m, 1, seed);
    const auto d = find_any_diamond(g);
    const auto exact = min_diamond_size(g);
    ASSERT_EQ(d.has_value(), exact.has_value()) << "seed " << seed;
    EXPECT_EQ(is_forest_of_cacti(g), !d.has_value());
    if (d) {
      EXPECT_TRUE(is_valid_diamond(g, *d)) << "seed " << seed;
      EXPECT_GE(d->size(), *exact);
    }
    std::size_t edges = 0;
    for (const auto& b : blocks(g).blocks) edges += b.edges.size();
    EXPECT_EQ(edges, g.num_edges());
  }
}

TEST(ShortCycles, Examples) {
  const auto k4 = complete_graph(4);
  const auto c = count_short_cycles(k4, 3);
  EXPECT_EQ(c.total, 4);
  for (VertexId v = 0; v < 4; ++v) EXPECT_EQ(c.per_vertex[v], 3);
  EXPECT_EQ(count_short_cycles(graph_from_edges(2, {{0, 1}, {0, 1}, {0, 1}}), 2).total, 3);
  const auto heawood = *named_graph("heawood");
  for (int i = 2; i <= 5; ++i) EXPECT_EQ(count_short_cycles(heawood, i).total, 0);
  EXPECT_THROW(count_short_cycles(k4, 6), PreconditionError);
}

TEST(ShortCycles, AgreeWithEdgeSubsetCount) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const auto g = random_multigraph(n, 4 + static_cast<int>(seed % 9), 1, seed);
    for (int len = 2; len <= 5; ++len) {
      const auto fast = count_short_cycles(g, len);
      EXPECT_EQ(fast.total, count_cycles_by_edge_subsets(g, len)) << "seed " << seed;
      std::int64_t listed = 0;
      std::vector<std::int64_t> per(g.vertex_capacity(), 0);
      for (const auto& cyc : enumerate_cycles(g, 5)) {
        if (static_cast<int>(cyc.length()) != len) continue;
        ++listed;
        for (VertexId v : cyc.vertices) ++per[v];
      }
      EXPECT_EQ(fast.total, listed);
      EXPECT_EQ(fast.per_vertex, per);
    }
  }
}

TEST(DeleteVertices, Examples) {
  const auto k4 = complete_graph(4);
  const auto tri = delete_vertices(k4, {3});
  EXPECT_EQ(tri.num_vertices(), 3u);
  EXPECT_EQ(tri.num_edges(), 3u);
  EXPECT_TRUE(delete_vertices(k4, {}) == k4);
  EXPECT_TRUE(delete_vertices(cycle_graph(3), {0, 1, 2}).empty());
  EXPECT_THROW(delete_vertices(tri, {3}), PreconditionError);
}

TEST(Graph, RejectsLoopsAndNegativeCosts) {
  WeightedMultiGraph g;
  g.add_vertex();
  EXPECT_THROW(g.add_edge(0, 0), PreconditionError);
  EXPECT_THROW(g.add_vertex(Rational(-1)), PreconditionError);
}

TEST(NamedGraphs, Shapes) {
  const auto heawood = *named_graph("heawood");
  EXPECT_EQ(heawood.num_vertices(), 14u);
  EXPECT_EQ(heawood.num_edges(), 21u);
  const auto petersen = *named_graph("petersen");
  EXPECT_EQ(petersen.num_edges(), 15u);
  for (int i = 2; i <= 4; ++i) EXPECT_EQ(count_short_cycles(petersen, i).total, 0);
  EXPECT_EQ(count_short_cycles(petersen, 5).total, 12);
  const auto mk = *named_graph("mobius-kantor");
  EXPECT_EQ(mk.num_vertices(), 16u);
  for (int i = 2; i <= 5; ++i) EXPECT_EQ(count_short_cycles(mk, i).total, 0);
  const auto tc = *named_graph("tutte-coxeter");
  EXPECT_EQ(tc.num_vertices(), 30u);
  EXPECT_EQ(tc.num_edges(), 45u);
  for (int i = 2; i <= 5; ++i) EXPECT_EQ(count_short_cycles(tc, i).total, 0);
  const auto tt = *named_graph("truncated-tetrahedron");
  EXPECT_EQ(count_short_cycles(tt, 3).total, 4);
  for (const auto& name : named_graph_list())
    for (VertexId v : named_graph(name)->vertices()) EXPECT_GE(named_graph(name)->degree(v), 2);
}
