#include <gtest/gtest.h>

#include <random>

#include "dhs/oracle.hpp"
#include "dhs/solver.hpp"

using namespace dhs;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

GraphPath path(std::vector<VertexId> vs, std::vector<EdgeId> es) { return GraphPath{vs, es}; }

WeightedMultiGraph random_costs(WeightedMultiGraph g, std::uint64_t seed, int max_cost, int min_cost = 0) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (VertexId v : g.vertices())
    g.set_cost(v, min_cost + static_cast<long>(rng() % (max_cost - min_cost + 1)));
  return g;
}

}  // namespace

TEST(MaxRaise, DiamondRowStopsAtSmallestResidual) {
  WorkingRow row;
  row.coeff = {{0, 1}, {1, 1}, {2, 1}};
  const auto r = max_raise(row, {q(2), q(3), q(5)});
  EXPECT_EQ(r.delta, 2);
  EXPECT_EQ(r.tight, std::vector<VertexId>{0});
  EXPECT_TRUE(r.collisions.empty());
}

TEST(MaxRaise, CollisionBeforeTightness) {
  // Non-special cycle with top 0-1-2 (residual 4, rate 0) and bottom 0-3-2
  // (residual 7, rate 1); the other unit vertices have residual 5 or more.
  WorkingRow row;
  row.kind = RowKind::BlendedDiamond;
  row.coeff = {{0, 1}, {2, 1}, {3, 1}, {4, 1}};
  HandleState hs;
  hs.cycle = {0, 2, {path({0, 1, 2}, {0, 1}), path({0, 3, 2}, {2, 3})}};
  hs.trc = 4;
  hs.brc = 7;
  hs.rate_top = 0;
  hs.rate_bottom = 1;
  row.handles = {hs};
  const auto r = max_raise(row, {q(5), q(4), q(6), q(7), q(5)});
  EXPECT_EQ(r.delta, 3);
  EXPECT_TRUE(r.tight.empty());
  EXPECT_EQ(r.collisions, std::vector<std::size_t>{0});
}

TEST(MaxRaise, ExtendedRowTightBeforeCollision) {
  WorkingRow row;
  row.kind = RowKind::ExtendedSparsity;
  row.coeff = {{0, q(9, 5)}, {3, 2}};
  HandleState hs;
  hs.cycle = {0, 2, {path({0, 1, 2}, {0, 1}), path({0, 3, 2}, {2, 3})}};
  hs.trc = 4;
  hs.brc = 7;
  hs.rate_top = 0;
  hs.rate_bottom = 2;
  row.handles = {hs};
  const auto r = max_raise(row, {q(9, 5), q(4), q(9), q(7)});
  EXPECT_EQ(r.delta, 1);
  EXPECT_EQ(r.tight, std::vector<VertexId>{0});
  EXPECT_TRUE(r.collisions.empty());
}

TEST(MaxRaise, SimultaneousEventsAreBothReported) {
  WorkingRow row;
  row.coeff = {{0, 1}, {3, 1}};
  HandleState hs;
  hs.cycle = {0, 2, {path({0, 1, 2}, {0, 1}), path({0, 3, 2}, {2, 3})}};
  hs.trc = 4;
  hs.brc = 7;
  hs.rate_bottom = 1;
  row.handles = {hs};
  const auto r = max_raise(row, {q(3), q(4), q(9), q(7)});
  EXPECT_EQ(r.delta, 3);
  EXPECT_EQ(r.tight, std::vector<VertexId>{0});
  EXPECT_EQ(r.collisions.size(), 1u);
  EXPECT_THROW(max_raise(WorkingRow{}, {}), InternalError);
}

TEST(InsertionOrder, Examples) {
  EXPECT_EQ(insertion_order({5, 2, 9}, {}), (std::vector<VertexId>{2, 5, 9}));
  const Triple t1{path({0, 1, 2, 3}, {0, 1, 2}), path({0, 4, 3}, {3, 4}), 0, 3, 0};
  EXPECT_EQ(insertion_order({2, 7, 1}, {t1}), (std::vector<VertexId>{7, 1, 2}));
  const Triple t2{path({10, 11, 12}, {10, 11}), path({10, 13, 12}, {12, 13}), 10, 12, 1};
  EXPECT_EQ(insertion_order({1, 11, 13}, {t1, t2}), (std::vector<VertexId>{11, 13, 1}));
  EXPECT_EQ(insertion_order({1, 4, 11, 13}, {t1, t2}), (std::vector<VertexId>{1, 4, 11, 13}));
}

TEST(ReverseDelete, Examples) {
  const auto theta = theta_graph(2, 2, 2);
  EXPECT_EQ(reverse_delete(theta, theta.vertices()).size(), 1u);
  const auto k4 = complete_graph(4);
  EXPECT_EQ(reverse_delete(k4, {0, 1, 2, 3}), std::vector<VertexId>{0});
  EXPECT_EQ(reverse_delete(k4, {2}), std::vector<VertexId>{2});
  EXPECT_THROW(reverse_delete(k4, {}), PreconditionError);
}

TEST(Greedy, Examples) {
  const auto forest = random_forest_of_cacti(15, 3);
  const auto c0 = greedy_unweighted(forest);
  EXPECT_TRUE(c0.hitting_set.empty());
  EXPECT_TRUE(c0.diamonds.empty());

  const auto theta = theta_graph(1, 2, 3);
  const auto c1 = greedy_unweighted(theta);
  EXPECT_EQ(c1.hitting_set.size(), 2u);
  EXPECT_EQ(c1.diamonds.size(), 1u);

  auto two = complete_graph(4);
  for (int i = 0; i < 4; ++i) two.add_vertex();
  for (int i = 4; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) two.add_edge(i, j);
  const auto c2 = greedy_unweighted(two);
  EXPECT_EQ(c2.diamonds.size(), 2u);
  EXPECT_LE(c2.hitting_set.size(), 8u);
  EXPECT_TRUE(verify_certificate(two, c2).ok());
}

TEST(PrimalDual, Examples) {
  for (Algorithm a : {Algorithm::LogN, Algorithm::Nine}) {
    const auto forest = random_forest_of_cacti(12, 5, 4);
    const auto c0 = primal_dual_solve(forest, a);
    EXPECT_TRUE(c0.hitting_set.empty());
    EXPECT_EQ(c0.dual, 0);

    auto theta = theta_graph(1, 1, 1);
    theta.set_cost(0, 3);
    theta.set_cost(1, 5);
    const auto c1 = primal_dual_solve(theta, a);
    EXPECT_EQ(c1.hitting_set, std::vector<VertexId>{0});
    EXPECT_EQ(c1.y, std::vector<Rational>{3});
    EXPECT_EQ(c1.primal, 3);
    EXPECT_EQ(c1.dual, 3);

    const auto k4 = complete_graph(4);
    const auto c2 = primal_dual_solve(k4, a);
    EXPECT_TRUE(verify_certificate(k4, c2).ok());
    EXPECT_LE(c2.primal, 4 * exact_min_hitting_set(k4).cost);
  }
}

TEST(PrimalDual, ZeroCostVerticesComeFirst) {
  auto k4 = complete_graph(4);
  k4.set_cost(2, 0);
  const auto c = primal_dual_solve(k4, Algorithm::LogN);
  EXPECT_EQ(c.hitting_set, std::vector<VertexId>{2});
  EXPECT_TRUE(c.rows.empty());
  EXPECT_EQ(c.primal, 0);
}

TEST(PrimalDual, RandomInstancesAgainstOracle) {
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    const int n = 3 + static_cast<int>(seed % 10);
    const auto g = random_costs(random_multigraph(n, n + 2 + static_cast<int>(seed % 7), 1, seed), seed, 6);
    const auto opt = exact_min_hitting_set(g).cost;
    for (Algorithm a : {Algorithm::LogN, Algorithm::Nine}) {
      const auto c = primal_dual_solve(g, a);
      const auto rep = verify_certificate(g, c);
      ASSERT_TRUE(rep.ok()) << "seed " << seed << " " << to_string(a) << " " << rep.failures().front();
      EXPECT_LE(c.dual, opt) << "seed " << seed;
      EXPECT_GE(c.primal, opt);
      if (a == Algorithm::Nine) EXPECT_LE(c.max_row_ratio(), 9);
    }
  }
}

TEST(PrimalDual, HandleVertexBecomingABranchVertex) {
  // Once 3 and 7 are taken, what is left is K4 minus an edge on {2, 4, 5, 6}.
  // Reducing it turns the two-neighbour vertex 5 into a branch vertex, which
  // strands the triple stored for the cycle 4-5-6.
  auto g = graph_from_edges(9, {{2, 3}, {5, 4}, {3, 0}, {7, 0}, {8, 7}, {4, 6}, {3, 6},
                                {2, 4}, {0, 1}, {6, 2}, {4, 7}, {3, 4}, {5, 6}});
  const long cost[] = {2, 5, 3, 2, 6, 4, 6, 0, 6};
  for (VertexId v = 0; v < 9; ++v) g.set_cost(v, cost[v]);
  for (Algorithm a : {Algorithm::LogN, Algorithm::Nine}) {
    const auto c = primal_dual_solve(g, a);
    EXPECT_GT(c.stats.triples_dropped, 0u);
    EXPECT_TRUE(verify_certificate(g, c).ok());
    EXPECT_GE(c.primal, exact_min_hitting_set(g).cost);
  }
}

TEST(PrimalDual, SparsityRowsOnLargeGirth) {
  for (const char* name : {"tutte-coxeter", "heawood", "mobius-kantor"}) {
    const auto g = random_costs(*named_graph(name), 11, 5, 1);
    const auto c = primal_dual_solve(g, Algorithm::Nine);
    const auto rep = verify_certificate(g, c);
    EXPECT_TRUE(rep.ok()) << name;
    if (std::string(name) == "tutte-coxeter") EXPECT_GT(c.stats.extended_rows, 0u);
    EXPECT_LE(c.max_row_ratio(), 9) << name;
  }
  // Subdivided graphs have double and simple pieces.
  auto g = *named_graph("tutte-coxeter");
  for (int i = 0; i < 5; ++i) g = subdivide_edge(g, g.edges()[static_cast<std::size_t>(7 * i)], 1 + i % 2);
  const auto weighted = random_costs(g, 4, 3, 1);
  const auto c = primal_dual_solve(weighted, Algorithm::Nine);
  EXPECT_TRUE(verify_certificate(weighted, c).ok());
  EXPECT_GT(c.stats.extended_rows, 0u);
}

TEST(Verify, DetectsTampering) {
  const auto g = random_costs(complete_graph(5), 1, 4);
  auto c = primal_dual_solve(g, Algorithm::Nine);
  ASSERT_TRUE(verify_certificate(g, c).ok());
  auto bumped = c;
  bumped.y[0] += 1;
  EXPECT_FALSE(verify_certificate(g, bumped).passed("dual_feasible"));
  auto missing = c;
  missing.hitting_set.pop_back();
  EXPECT_FALSE(verify_certificate(g, missing).passed("hitting"));
  auto extra = c;
  for (VertexId v : g.vertices())
    if (std::find(extra.hitting_set.begin(), extra.hitting_set.end(), v) == extra.hitting_set.end()) {
      extra.hitting_set.push_back(v);
      break;
    }
  EXPECT_FALSE(verify_certificate(g, extra).passed("minimal"));
}

TEST(Exact, MatchesOracle) {
  const auto g = random_costs(complete_graph(5), 2, 5);
  const auto c = exact_solve(g);
  EXPECT_EQ(c.primal, exact_min_hitting_set(g).cost);
  EXPECT_TRUE(verify_certificate(g, c).ok());
}
