#include <gtest/gtest.h>

#include <random>

#include "dhs/inequalities.hpp"
#include "dhs/oracle.hpp"

using namespace dhs;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

// Cheapest hitting set when each vertex costs its row coefficient.
Rational min_row_weight(const WeightedMultiGraph& g, const WorkingRow& row) {
  auto w = g;
  for (VertexId v : w.vertices()) w.set_cost(v, row.at(v));
  return exact_min_hitting_set(w).cost;
}

// Indicator vector of V(d) for an edge set forming a theta in h.
std::optional<std::vector<VertexId>> theta_vertices(const WeightedMultiGraph& h, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  const auto k = edge_subgraph(h, edges);
  if (connected_components(k).size() != 1 || k.num_edges() != k.num_vertices() + 1) return std::nullopt;
  int branch = 0;
  for (VertexId v : k.vertices()) {
    if (k.degree(v) == 3) ++branch;
    else if (k.degree(v) != 2) return std::nullopt;
  }
  if (branch != 2) return std::nullopt;
  return k.vertices();
}

// The two diamonds of a necklace row: special cycle whole, bottoms of
// unequal cycles, and tops (first) or bottoms (second) of equalized ones.
std::array<std::vector<EdgeId>, 2> routed_diamonds(const WorkingRow& row) {
  std::array<std::vector<EdgeId>, 2> out;
  std::set<EdgeId> on_cycles;
  for (const auto& hs : row.handles)
    for (const auto& h : hs.cycle.handles) on_cycles.insert(h.edges.begin(), h.edges.end());
  for (EdgeId e : row.support->sub.edges)
    if (!on_cycles.count(e))
      for (auto& d : out) d.push_back(e);
  for (const auto& hs : row.handles)
    for (int side = 0; side < 2; ++side) {
      auto& d = out[side];
      auto add = [&](const GraphPath& p) { d.insert(d.end(), p.edges.begin(), p.edges.end()); };
      if (hs.special) {
        add(hs.top_handle());
        add(hs.bottom_handle());
      } else if (hs.equalized()) {
        add(side == 0 ? hs.top_handle() : hs.bottom_handle());
      } else {
        add(hs.bottom_handle());
      }
    }
  return out;
}

// Edge uv replaced by u-a-x, u-b-x, x-v: a double piece whose only cycle has
// two nontrivial handles.
WeightedMultiGraph with_double_piece(const WeightedMultiGraph& g, EdgeId e) {
  auto out = g;
  const auto [u, v] = g.ends(e);
  out.remove_edge(e);
  const VertexId a = out.add_vertex(), b = out.add_vertex(), x = out.add_vertex();
  out.add_edge(u, a);
  out.add_edge(a, x);
  out.add_edge(u, b);
  out.add_edge(b, x);
  out.add_edge(x, v);
  return out;
}

EdgeId edge_off_triangles(const WeightedMultiGraph& g) {
  std::set<EdgeId> on;
  for (const auto& c : enumerate_cycles(g, 3)) on.insert(c.edges.begin(), c.edges.end());
  for (EdgeId e : g.edges())
    if (!on.count(e)) return e;
  return kNoEdge;
}

}  // namespace

TEST(Loads, LambdaValues) {
  EXPECT_EQ(lambda(2), q(4, 5));
  EXPECT_EQ(lambda(3), q(3, 5));
  EXPECT_EQ(lambda(4), q(1, 5));
  EXPECT_EQ(lambda(5), q(1, 10));
  EXPECT_THROW(lambda(6), PreconditionError);
}

TEST(Loads, Examples) {
  const auto heawood = *named_graph("heawood");
  for (VertexId v : heawood.vertices()) EXPECT_EQ(load(heawood, v), 3);
  // Every vertex lies on one triangle and no 4- or 5-cycle.
  const auto tt = *named_graph("truncated-tetrahedron");
  for (VertexId v : tt.vertices()) EXPECT_EQ(load(tt, v), q(12, 5));
}

TEST(CactusBound, Examples) {
  WeightedMultiGraph one;
  one.add_vertex();
  EXPECT_EQ(cactus_edge_bound(one), 0);
  EXPECT_EQ(cactus_edge_bound(cycle_graph(3)), 3);
  EXPECT_EQ(cactus_edge_bound(graph_from_edges(4, {{0, 1}, {2, 3}})), q(12, 5));
  EXPECT_THROW(cactus_edge_bound(complete_graph(4)), PreconditionError);
}

TEST(CactusBound, HoldsOnRandomForests) {
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    const auto f = random_forest_of_cacti(1 + static_cast<int>(seed % 30), seed);
    EXPECT_LE(Rational(static_cast<long>(f.num_edges())), cactus_edge_bound(f)) << "seed " << seed;
  }
}

TEST(DiamondRow, Examples) {
  const auto theta = theta_graph(1, 1, 1);
  const auto row = build_diamond_row(*find_any_diamond(theta));
  EXPECT_EQ(row.coeff.size(), 2u);
  EXPECT_EQ(row.rhs, 1);
  const auto k4 = complete_graph(4);
  const auto d = find_log_diamond_simple(k4);
  const auto r4 = build_diamond_row(d);
  EXPECT_EQ(r4.coeff.size(), 4u);
  for (const auto& [v, a] : r4.coeff) EXPECT_EQ(a, 1);
}

TEST(BlendedRow, ParallelPair) {
  const auto r = reduce(graph_from_edges(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}));
  const auto s = extract_support_graph(r, find_log_diamond_reduced(r));
  const auto row = build_blended_row(s, std::vector<Rational>(2, 1), {});
  EXPECT_EQ(row.coeff, (std::map<VertexId, Rational>{{0, 1}, {1, 1}}));
  EXPECT_EQ(row.rhs, 1);
}

TEST(BlendedRow, HandTable) {
  // Necklace on branch vertices 0 and 1: cycle C1 with handles 0-2-1 and
  // 0-3-1, cycle C2 with handles 1-4-0 and 1-5-0.
  SupportGraph s;
  s.type = SupportType::Necklace;
  auto path = [](std::vector<VertexId> vs, std::vector<EdgeId> es) { return GraphPath{vs, es}; };
  s.pieces.push_back(detail::cycle_piece(path({0, 2, 1}, {0, 1}), path({0, 3, 1}, {2, 3})));
  s.pieces.push_back(detail::cycle_piece(path({1, 4, 0}, {4, 5}), path({1, 5, 0}, {6, 7})));
  s.sub = detail::union_of(s.pieces);
  std::vector<Rational> residual{q(9), q(9), q(4), q(7), q(5), q(5)};
  const auto row = build_blended_row(s, residual, {});
  EXPECT_EQ(row.coeff, (std::map<VertexId, Rational>{{0, 1}, {1, 1}, {3, 1}, {4, 1}, {5, 1}}));
  ASSERT_EQ(row.handles.size(), 2u);
  EXPECT_FALSE(row.handles[0].special);
  EXPECT_TRUE(row.handles[1].special);
  EXPECT_EQ(*row.handles[0].trc, 4);
  EXPECT_EQ(*row.handles[0].brc, 7);

  // Only one cycle: it is special and everything gets 1.
  SupportGraph one = s;
  one.pieces = {s.pieces[0], detail::simple_piece(path({1, 6, 0}, {8, 9}))};
  one.sub = detail::union_of(one.pieces);
  residual.push_back(q(1));
  const auto row1 = build_blended_row(one, residual, {});
  for (VertexId v : one.sub.vertices) EXPECT_EQ(row1.at(v), 1);

  // Equal residuals on a non-special cycle give one half on both handles.
  residual[3] = 4;
  residual[4] = 1;
  residual[5] = 2;
  const auto row2 = build_blended_row(s, residual, {});
  EXPECT_TRUE(row2.handles[0].special);  // equalized cycles are preferred
  residual[4] = 2;
  const auto row3 = build_blended_row(s, residual, {});
  EXPECT_TRUE(row3.handles[0].special);
  EXPECT_EQ(row3.at(4), q(1, 2));
  EXPECT_EQ(row3.at(5), q(1, 2));

  // A stored triple decides ties and a contradicting one is an error.
  const Triple t{path({0, 3, 1}, {2, 3}), path({0, 2, 1}, {0, 1}), 0, 1, 0};
  residual[2] = residual[3] = 6;
  EXPECT_EQ(label_cycle(s.pieces[0].cycles[0], residual, {t}).top, 1);
  EXPECT_EQ(label_cycle(s.pieces[0].cycles[0], residual, {}).top, 0);
  residual[3] = 7;
  EXPECT_THROW(label_cycle(s.pieces[0].cycles[0], residual, {t}), InternalError);
}

TEST(BlendedRow, IsAnAverageOfTwoDiamonds) {
  int necklaces = 0, equalized = 0;
  for (std::uint64_t seed = 0; seed < 1500; ++seed) {
    const int n = 3 + static_cast<int>(seed % 25);
    const auto h = shave(random_multigraph(n, n + 1 + static_cast<int>(seed % 6), 1, seed));
    if (h.empty()) continue;
    const auto r = reduce(h);
    const auto s = extract_support_graph(r, find_log_diamond_reduced(r));
    std::mt19937_64 rng(seed);
    std::vector<Rational> residual(h.vertex_capacity());
    // Constant residuals on odd seeds make every two-sided cycle equalized.
    for (auto& x : residual) x = seed % 2 ? 1L : static_cast<long>(rng() % 3);
    const auto row = build_blended_row(s, residual, {});
    for (const auto& [v, a] : row.coeff)
      EXPECT_TRUE(a == 1 || a == q(1, 2)) << "seed " << seed;
    if (s.type != SupportType::Necklace) {
      EXPECT_EQ(row.coeff.size(), s.sub.vertices.size());
      continue;
    }
    ++necklaces;
    const auto ds = routed_diamonds(row);
    std::map<VertexId, Rational> avg;
    for (const auto& d : ds) {
      const auto vs = theta_vertices(h, d);
      ASSERT_TRUE(vs.has_value()) << "seed " << seed;
      for (VertexId v : *vs) avg[v] += q(1, 2);
    }
    EXPECT_EQ(row.coeff, avg) << "seed " << seed;
    for (const auto& hs : row.handles) equalized += !hs.special && hs.equalized();
  }
  EXPECT_GT(necklaces, 20);
  EXPECT_GT(equalized, 0);
}

TEST(ShortCycleConflict, Examples) {
  const auto k4 = short_cycle_conflict(complete_graph(4));
  ASSERT_TRUE(k4.has_value());
  EXPECT_LE(k4->size(), 9u);
  EXPECT_TRUE(is_valid_diamond(complete_graph(4), *k4));
  EXPECT_FALSE(short_cycle_conflict(*named_graph("heawood")).has_value());
  const auto par = short_cycle_conflict(graph_from_edges(2, {{0, 1}, {0, 1}, {0, 1}}));
  ASSERT_TRUE(par.has_value());
  EXPECT_EQ(par->size(), 3u);
}

TEST(ShortCycleConflict, MatchesPairwiseCheck) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 3 + static_cast<int>(seed % 10);
    const auto g = random_multigraph(n, n + static_cast<int>(seed % 8), 1, seed);
    const auto cycles = enumerate_cycles(g, 5);
    bool shared = false;
    for (std::size_t a = 0; a < cycles.size() && !shared; ++a)
      for (std::size_t b = a + 1; b < cycles.size() && !shared; ++b)
        for (EdgeId e : cycles[a].edges)
          if (std::find(cycles[b].edges.begin(), cycles[b].edges.end(), e) != cycles[b].edges.end())
            shared = true;
    const auto d = short_cycle_conflict(g);
    EXPECT_EQ(d.has_value(), shared) << "seed " << seed;
    if (d) {
      EXPECT_TRUE(is_valid_diamond(g, *d));
      EXPECT_LE(d->size(), 9u);
    }
  }
}

TEST(SparsityRow, Examples) {
  const auto heawood = build_sparsity_row_basic(*named_graph("heawood"));
  EXPECT_EQ(heawood.coeff.size(), 14u);
  for (const auto& [v, a] : heawood.coeff) EXPECT_EQ(a, q(9, 5));
  EXPECT_EQ(heawood.rhs, q(27, 5));
  const auto c10 = build_sparsity_row_basic(cycle_graph(10));
  for (const auto& [v, a] : c10.coeff) EXPECT_EQ(a, q(4, 5));
  EXPECT_EQ(c10.rhs, q(-4, 5));
  EXPECT_THROW(build_sparsity_row_basic(complete_graph(4)), PreconditionError);
}

TEST(ExtendedRow, Examples) {
  const auto heawood = *named_graph("heawood");
  const auto r = reduce(heawood);
  const std::vector<Rational> ones(heawood.vertex_capacity() + 8, 1);
  const auto row = build_extended_sparsity_row(r, ones, {});
  for (VertexId v : heawood.vertices()) EXPECT_EQ(row.at(v), q(9, 5));
  EXPECT_EQ(row.rhs, q(27, 5));

  const auto sub = subdivide_edge(heawood, 0, 1);
  const auto rs = reduce(sub);
  const auto row_s = build_extended_sparsity_row(rs, ones, {});
  EXPECT_EQ(row_s.at(14), 1);
  EXPECT_EQ(row_s.rhs, q(27, 5));

  const auto tt = *named_graph("truncated-tetrahedron");
  // An edge between two triangles, so the new 2-cycle meets no triangle.
  const auto dp = with_double_piece(tt, edge_off_triangles(tt));
  const auto rd = reduce(dp);
  const auto row_d = build_extended_sparsity_row(rd, ones, {});
  ASSERT_EQ(row_d.handles.size(), 1u);
  EXPECT_TRUE(row_d.handles[0].special);
  EXPECT_EQ(row_d.at(12), 1);
  EXPECT_EQ(row_d.at(13), 1);
  EXPECT_EQ(row_d.at(14), 2);
}

TEST(ExtendedRow, RejectsShortCycleConflicts) {
  const auto r = reduce(complete_graph(4));
  EXPECT_THROW(build_extended_sparsity_row(r, std::vector<Rational>(4, 1), {}), PreconditionError);
}

TEST(Validity, NamedGraphs) {
  for (const char* name : {"heawood", "mobius-kantor", "truncated-tetrahedron"}) {
    const auto g = *named_graph(name);
    const auto basic = build_sparsity_row_basic(g);
    EXPECT_GE(min_row_weight(g, basic), basic.rhs) << name;
    const auto r = reduce(g);
    const auto ext = build_extended_sparsity_row(r, std::vector<Rational>(g.vertex_capacity(), 1), {});
    EXPECT_GE(min_row_weight(g, ext), ext.rhs) << name;
  }
}

TEST(Validity, SubdividedAndDoubledPieces) {
  std::mt19937_64 rng(7);
  const auto tt = *named_graph("truncated-tetrahedron");
  const auto heawood = *named_graph("heawood");
  std::vector<WeightedMultiGraph> corpus{with_double_piece(tt, edge_off_triangles(tt)),
                                         subdivide_edge(heawood, 3, 2)};
  for (int i = 0; i < 6; ++i) {
    auto g = tt;
    const int k = 1 + i % 4;
    for (int j = 0; j < k; ++j) {
      const auto es = g.edges();
      g = subdivide_edge(g, es[rng() % es.size()], 1);
    }
    corpus.push_back(g);
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& g = corpus[i];
    const auto r = reduce(shave(g));
    if (short_cycle_conflict(r.graph)) continue;
    std::vector<Rational> residual(g.vertex_capacity());
    for (auto& x : residual) x = static_cast<long>(rng() % 3);
    const auto ext = build_extended_sparsity_row(r, residual, {});
    EXPECT_GE(min_row_weight(g, ext), ext.rhs) << "graph " << i;
  }
}

TEST(RowValidityOracle, Examples) {
  const auto heawood = *named_graph("heawood");
  const auto basic = build_sparsity_row_basic(heawood);
  const auto ok = check_row_validity(heawood, basic.coeff, basic.rhs);
  EXPECT_TRUE(ok.valid);
  EXPECT_GT(ok.hitting_sets, 0u);

  const auto k4 = complete_graph(4);
  const auto d = *find_any_diamond(k4);
  const auto row = build_diamond_row(d);
  EXPECT_TRUE(check_row_validity(k4, row.coeff, row.rhs).valid);

  const auto bad = check_row_validity(k4, row.coeff, 2);
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.counterexample.size(), 1u);
  EXPECT_TRUE(is_hitting_set(k4, bad.counterexample));
}
