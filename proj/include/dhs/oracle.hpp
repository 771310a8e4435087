#pragma once

// Exhaustive ground truth for small graphs, plus seeded instance generators.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dhs/multigraph.hpp"
#include "dhs/reduce.hpp"

namespace dhs {

// ---------------------------------------------------------------------------
// Hitting sets

inline bool is_hitting_set(const WeightedMultiGraph& g, const std::vector<VertexId>& x) {
  return is_forest_of_cacti(delete_vertices(g, x));
}

namespace detail {

inline std::vector<VertexId> mask_to_set(const std::vector<VertexId>& ids, std::uint32_t mask) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (mask >> i & 1u) out.push_back(ids[i]);
  return out;
}

// hits[mask] for every subset of the live vertices.
inline std::vector<char> hitting_table(const WeightedMultiGraph& g,
                                       const std::vector<VertexId>& ids) {
  const std::uint32_t full = 1u << ids.size();
  std::vector<char> hits(full, 0);
  for (std::uint32_t mask = 0; mask < full; ++mask)
    hits[mask] = is_hitting_set(g, mask_to_set(ids, mask));
  return hits;
}

}  // namespace detail

struct ExactSolution {
  std::vector<VertexId> set;
  Rational cost;
};

// Cheapest hitting set; ties broken by size, then lexicographically.
inline ExactSolution exact_min_hitting_set(const WeightedMultiGraph& g) {
  if (g.num_vertices() > 16) throw SizeLimitError("exact_min_hitting_set: more than 16 vertices");
  const auto ids = g.vertices();
  const std::uint32_t full = 1u << ids.size();
  std::optional<ExactSolution> best;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    auto set = detail::mask_to_set(ids, mask);
    Rational cost = 0;
    for (VertexId v : set) cost += g.cost(v);
    if (best) {
      if (cost > best->cost) continue;
      if (cost == best->cost &&
          (set.size() > best->set.size() || (set.size() == best->set.size() && set >= best->set)))
        continue;
    }
    if (is_hitting_set(g, set)) best = ExactSolution{std::move(set), cost};
  }
  return *best;
}

inline std::vector<std::vector<VertexId>> enumerate_minimal_hitting_sets(
    const WeightedMultiGraph& g) {
  if (g.num_vertices() > 12)
    throw SizeLimitError("enumerate_minimal_hitting_sets: more than 12 vertices");
  const auto ids = g.vertices();
  const auto hits = detail::hitting_table(g, ids);
  std::vector<std::vector<VertexId>> out;
  for (std::uint32_t mask = 0; mask < hits.size(); ++mask) {
    if (!hits[mask]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < ids.size() && minimal; ++i)
      if ((mask >> i & 1u) && hits[mask & ~(1u << i)]) minimal = false;
    if (minimal) out.push_back(detail::mask_to_set(ids, mask));
  }
  return out;
}

struct RowCheck {
  bool valid = true;
  std::vector<VertexId> counterexample;  // a hitting set with weight below the rhs
  std::size_t hitting_sets = 0;          // number of hitting sets evaluated
};

// Evaluates sum_{v in X} coeff(v) >= rhs on every hitting set X.
inline RowCheck check_row_validity(const WeightedMultiGraph& g, const std::map<VertexId, Rational>& coeff,
                                   const Rational& rhs) {
  if (g.num_vertices() > 16) throw SizeLimitError("check_row_validity: more than 16 vertices");
  const auto ids = g.vertices();
  const auto hits = detail::hitting_table(g, ids);
  RowCheck out;
  std::optional<Rational> worst;
  for (std::uint32_t mask = 0; mask < hits.size(); ++mask) {
    if (!hits[mask]) continue;
    ++out.hitting_sets;
    Rational w = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask >> i & 1u)
        if (auto it = coeff.find(ids[i]); it != coeff.end()) w += it->second;
    if (w < rhs && (!worst || w < *worst)) {
      worst = w;
      out.valid = false;
      out.counterexample = detail::mask_to_set(ids, mask);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smallest theta by path enumeration

inline std::optional<std::size_t> min_diamond_size(const WeightedMultiGraph& g) {
  if (g.num_vertices() > 14) throw SizeLimitError("min_diamond_size: more than 14 vertices");
  const auto any = find_any_diamond(g);
  if (!any) return std::nullopt;
  std::size_t best = any->size();
  const auto ids = g.vertices();
  std::vector<int> index(g.vertex_capacity(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = static_cast<int>(i);

  struct PathInfo {
    std::size_t length;
    std::uint32_t internal;
    EdgeId single_edge;  // for length-1 paths, to keep parallel edges distinct
  };
  for (std::size_t ia = 0; ia < ids.size(); ++ia)
    for (std::size_t ib = ia + 1; ib < ids.size(); ++ib) {
      const VertexId a = ids[ia], b = ids[ib];
      if (best == 3) return best;
      std::vector<PathInfo> paths;
      // DFS over simple a-b paths no longer than best - 2.
      std::uint32_t visited = 1u << ia;
      std::function<void(VertexId, std::size_t, std::uint32_t, EdgeId)> dfs =
          [&](VertexId v, std::size_t len, std::uint32_t internal, EdgeId first) {
            for (EdgeId e : g.incident(v)) {
              const VertexId w = g.other(e, v);
              const std::uint32_t bit = 1u << index[w];
              if (w == b) {
                paths.push_back({len + 1, internal, len == 0 ? e : first});
                continue;
              }
              if (visited & bit || len + 2 > best - 2) continue;
              visited |= bit;
              dfs(w, len + 1, internal | bit, len == 0 ? e : first);
              visited &= ~bit;
            }
          };
      dfs(a, 0, 0, kNoEdge);
      std::sort(paths.begin(), paths.end(),
                [](const PathInfo& x, const PathInfo& y) { return x.length < y.length; });
      auto compatible = [](const PathInfo& x, const PathInfo& y) {
        if (x.internal & y.internal) return false;
        if (x.length == 1 && y.length == 1) return x.single_edge != y.single_edge;
        return true;
      };
      for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
          if (paths[i].length + paths[j].length + paths[j].length >= best) break;
          if (!compatible(paths[i], paths[j])) continue;
          for (std::size_t k = j + 1; k < paths.size(); ++k) {
            const std::size_t total = paths[i].length + paths[j].length + paths[k].length;
            if (total >= best) break;
            if (compatible(paths[i], paths[k]) && compatible(paths[j], paths[k])) {
              best = total;
              break;
            }
          }
        }
    }
  return best;
}

// Cycles of exactly `len` edges, counted by testing every edge subset for
// being connected and 2-regular.
inline std::int64_t count_cycles_by_edge_subsets(const WeightedMultiGraph& g, int len) {
  const auto edges = g.edges();
  if (edges.size() > 40) throw SizeLimitError("count_cycles_by_edge_subsets: too many edges");
  std::int64_t count = 0;
  std::vector<int> pick(len);
  std::function<void(int, std::size_t)> choose = [&](int depth, std::size_t from) {
    if (depth == len) {
      std::vector<EdgeId> chosen;
      for (int i : pick) chosen.push_back(edges[i]);
      const WeightedMultiGraph sub = edge_subgraph(g, chosen);
      for (VertexId v : sub.vertices())
        if (sub.degree(v) != 2) return;
      if (connected_components(sub).size() == 1) ++count;
      return;
    }
    for (std::size_t i = from; i < edges.size(); ++i) {
      pick[depth] = static_cast<int>(i);
      choose(depth + 1, i + 1);
    }
  };
  choose(0, 0);
  return count;
}

// All bonds of g having u as an internal vertex, one per admissible end pair.
inline std::vector<Bond> enumerate_bonds_containing(const WeightedMultiGraph& g, VertexId u) {
  std::vector<Bond> out;
  const auto vs = g.vertices();
  for (VertexId v : vs)
    for (VertexId w : vs)
      if (v < w)
        if (auto b = analyze_bond(g, v, w, u)) out.push_back(std::move(*b));
  return out;
}

inline bool subgraph_contains(const Subgraph& big, const Subgraph& small) {
  return std::includes(big.vertices.begin(), big.vertices.end(), small.vertices.begin(),
                       small.vertices.end()) &&
         std::includes(big.edges.begin(), big.edges.end(), small.edges.begin(),
                       small.edges.end());
}

// ---------------------------------------------------------------------------
// Generators

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

}  // namespace detail

inline WeightedMultiGraph random_multigraph(int n, int m, int max_cost, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  WeightedMultiGraph g;
  for (int i = 0; i < n; ++i)
    g.add_vertex(Rational(static_cast<long>(detail::draw(rng, 1, max_cost))));
  if (n < 2) return g;
  for (int i = 0; i < m; ++i) {
    const auto u = static_cast<VertexId>(detail::draw(rng, 0, n - 1));
    auto v = static_cast<VertexId>(detail::draw(rng, 0, n - 2));
    if (v >= u) ++v;
    g.add_edge(u, v);
  }
  return g;
}

inline WeightedMultiGraph random_simple_min_degree3(int n, std::uint64_t seed, int max_cost = 1) {
  if (n < 4) throw PreconditionError("need at least four vertices");
  std::mt19937_64 rng(seed);
  WeightedMultiGraph g;
  for (int i = 0; i < n; ++i)
    g.add_vertex(Rational(static_cast<long>(detail::draw(rng, 1, max_cost))));
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (VertexId v = 0; v < n; ++v) {
    while (g.degree(v) < 3) {
      const auto w = static_cast<VertexId>(detail::draw(rng, 0, n - 1));
      if (w == v || adj[v][w]) continue;
      adj[v][w] = adj[w][v] = 1;
      g.add_edge(v, w);
    }
  }
  return g;
}

// Random forest, then tree paths closed into cycles whose edges are not yet
// on any cycle. A closing edge over a single tree edge makes a 2-cycle.
inline WeightedMultiGraph random_forest_of_cacti(int n, std::uint64_t seed, int max_cost = 1) {
  std::mt19937_64 rng(seed);
  WeightedMultiGraph g;
  for (int i = 0; i < n; ++i)
    g.add_vertex(Rational(static_cast<long>(detail::draw(rng, 1, max_cost))));
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<EdgeId> parent_edge(n, kNoEdge);
  std::vector<int> depth(n, 0);
  for (VertexId v = 1; v < n; ++v) {
    if (detail::draw(rng, 0, 9) == 0) continue;  // starts a new tree
    parent[v] = static_cast<VertexId>(detail::draw(rng, 0, v - 1));
    depth[v] = depth[parent[v]] + 1;
    parent_edge[v] = g.add_edge(v, parent[v]);
  }
  std::vector<char> on_cycle(std::max(n, 1), 0);  // indexed by the child vertex
  const int attempts = n;
  for (int t = 0; t < attempts && n >= 2; ++t) {
    VertexId x = static_cast<VertexId>(detail::draw(rng, 0, n - 1));
    VertexId y = static_cast<VertexId>(detail::draw(rng, 0, n - 1));
    if (x == y) continue;
    std::vector<VertexId> climbed;
    VertexId a = x, b = y;
    while (a != b && a != kNoVertex && b != kNoVertex) {
      if (depth[a] >= depth[b]) {
        climbed.push_back(a);
        a = parent[a];
      } else {
        climbed.push_back(b);
        b = parent[b];
      }
    }
    if (a != b) continue;  // different trees
    bool free = true;
    for (VertexId c : climbed) free = free && !on_cycle[c];
    if (!free) continue;
    for (VertexId c : climbed) on_cycle[c] = 1;
    g.add_edge(x, y);
  }
  DHS_ENSURE(is_forest_of_cacti(g), "cactus generator produced a diamond");
  return g;
}

inline WeightedMultiGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  WeightedMultiGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(Rational(1));
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline WeightedMultiGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return graph_from_edges(n, e);
}

// Hamiltonian cubic graph from an LCF shift list repeated `times` times.
inline WeightedMultiGraph lcf_graph(const std::vector<int>& shifts, int times) {
  const int n = static_cast<int>(shifts.size()) * times;
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  for (int i = 0; i < n; ++i) {
    const int j = ((i + shifts[i % shifts.size()]) % n + n) % n;
    if (i < j) e.emplace_back(i, j);
  }
  return graph_from_edges(n, e);
}

inline WeightedMultiGraph generalized_petersen(int n, int k) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) {
    e.emplace_back(i, (i + 1) % n);
    e.emplace_back(i, n + i);
    e.emplace_back(n + i, n + (i + k) % n);
  }
  return graph_from_edges(2 * n, e);
}

// Two branch vertices 0 and 1 joined by paths with the given edge counts.
inline WeightedMultiGraph theta_graph(int a, int b, int c) {
  WeightedMultiGraph g;
  g.add_vertex();
  g.add_vertex();
  for (int len : {a, b, c}) {
    if (len < 1) throw PreconditionError("theta path length must be positive");
    VertexId prev = 0;
    for (int i = 1; i < len; ++i) {
      const VertexId x = g.add_vertex();
      g.add_edge(prev, x);
      prev = x;
    }
    g.add_edge(prev, 1);
  }
  return g;
}

inline WeightedMultiGraph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return graph_from_edges(n, e);
}

// Replaces edge e by a path with `extra` new internal vertices.
inline WeightedMultiGraph subdivide_edge(const WeightedMultiGraph& g, EdgeId e, int extra,
                                         const Rational& cost = Rational(1)) {
  WeightedMultiGraph out = g;
  const auto [u, v] = g.ends(e);
  out.remove_edge(e);
  VertexId prev = u;
  for (int i = 0; i < extra; ++i) {
    const VertexId x = out.add_vertex(cost);
    out.add_edge(prev, x);
    prev = x;
  }
  out.add_edge(prev, v);
  return out;
}

inline std::optional<WeightedMultiGraph> named_graph(const std::string& name) {
  if (name == "k4") return complete_graph(4);
  if (name == "k5") return complete_graph(5);
  if (name == "petersen") return generalized_petersen(5, 2);
  if (name == "heawood") return lcf_graph({5, -5}, 7);
  if (name == "prism") return generalized_petersen(3, 1);
  if (name == "mobius-kantor") return generalized_petersen(8, 3);
  if (name == "cube") return generalized_petersen(4, 1);
  if (name == "truncated-tetrahedron") return lcf_graph({2, 6, -2}, 4);
  if (name == "tutte-coxeter") return lcf_graph({-13, -9, 7, -7, 9, 13}, 5);
  if (name == "theta") return theta_graph(1, 1, 1);
  if (name == "theta-223") return theta_graph(2, 2, 3);
  if (name == "theta-333") return theta_graph(3, 3, 3);
  return std::nullopt;
}

inline std::vector<std::string> named_graph_list() {
  return {"k4",   "k5",         "petersen", "heawood",   "prism",     "mobius-kantor",
          "cube", "truncated-tetrahedron",  "tutte-coxeter", "theta", "theta-223", "theta-333"};
}

enum class GeneratorKind { RandomMultigraph, RandomSimpleMinDegree3, RandomCactusForest, Named };

struct InstanceSpec {
  GeneratorKind kind = GeneratorKind::RandomMultigraph;
  int n = 8;
  int m = 12;  // random multigraphs only
  int min_cost = 1;
  int max_cost = 1;
  std::string name;  // named graphs only
  std::uint64_t seed = 0;
};

inline WeightedMultiGraph generate(const InstanceSpec& spec) {
  if (spec.min_cost < 0 || spec.max_cost < spec.min_cost)
    throw PreconditionError("bad cost range");
  WeightedMultiGraph g;
  switch (spec.kind) {
    case GeneratorKind::RandomMultigraph:
      if (spec.n < 0 || spec.m < 0) throw PreconditionError("bad size");
      g = random_multigraph(spec.n, spec.m, 1, spec.seed);
      break;
    case GeneratorKind::RandomSimpleMinDegree3:
      g = random_simple_min_degree3(spec.n, spec.seed);
      break;
    case GeneratorKind::RandomCactusForest:
      if (spec.n < 0) throw PreconditionError("bad size");
      g = random_forest_of_cacti(spec.n, spec.seed);
      break;
    case GeneratorKind::Named: {
      auto named = named_graph(spec.name);
      if (!named) throw PreconditionError("unknown named graph '" + spec.name + "'");
      g = std::move(*named);
      break;
    }
  }
  // Costs come from a stream of their own so that changing the range keeps
  // the shape.
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  for (VertexId v : g.vertices())
    g.set_cost(v, Rational(static_cast<long>(detail::draw(rng, spec.min_cost, spec.max_cost))));
  return g;
}

}  // namespace dhs
