#pragma once

// Shaving and bond reduction. A reduced graph keeps enough provenance to map
// every one of its edges back to the subgraph of the shaved input it stands
// for.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "dhs/multigraph.hpp"

namespace dhs {

inline WeightedMultiGraph shave(const WeightedMultiGraph& g) {
  std::vector<VertexId> keep;
  for (const auto& b : blocks(g).blocks)
    if (!b.is_cycle_or_edge) keep.insert(keep.end(), b.vertices.begin(), b.vertices.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  return induced_subgraph(g, keep);
}

inline bool is_reducible(const WeightedMultiGraph& g, VertexId u) {
  const auto nb = g.neighbors(u);
  if (nb.size() != 2) return false;
  return g.multiplicity(u, nb[0]) <= 2 && g.multiplicity(u, nb[1]) <= 2;
}

inline std::optional<VertexId> find_reducible_vertex(const WeightedMultiGraph& h) {
  for (VertexId v : h.vertices())
    if (is_reducible(h, v)) return v;
  return std::nullopt;
}

enum class ChainBlockKind { Edge, DoubleEdge, Cycle };

// One block of a bond or double piece, oriented from `entry` to `exit`.
// Cycle-like blocks carry their two entry-exit paths as handles.
struct ChainBlock {
  ChainBlockKind kind = ChainBlockKind::Edge;
  VertexId entry = kNoVertex;
  VertexId exit = kNoVertex;
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  std::array<GraphPath, 2> handles;
};

struct Bond {
  VertexId v = kNoVertex;
  VertexId w = kNoVertex;
  std::vector<VertexId> internal;  // sorted
  Subgraph subgraph;
  std::vector<ChainBlock> chain;  // from v to w
  bool is_double = false;
};

namespace detail {

// The two entry->exit paths of a 2-connected cactus block (a cycle).
inline std::array<GraphPath, 2> cycle_handles(const WeightedMultiGraph& g,
                                              const std::vector<EdgeId>& cycle_edges,
                                              VertexId entry, VertexId exit) {
  std::array<GraphPath, 2> out;
  std::vector<EdgeId> first_edges;
  for (EdgeId e : cycle_edges)
    if (g.ends(e).u == entry || g.ends(e).v == entry) first_edges.push_back(e);
  DHS_ENSURE(first_edges.size() == 2, "cycle block vertex without two cycle edges");
  for (int side = 0; side < 2; ++side) {
    GraphPath& p = out[side];
    p.vertices = {entry};
    EdgeId e = first_edges[side];
    VertexId cur = entry;
    while (true) {
      cur = g.other(e, cur);
      p.edges.push_back(e);
      p.vertices.push_back(cur);
      if (cur == exit) break;
      EdgeId next = kNoEdge;
      for (EdgeId f : cycle_edges)
        if (f != e && (g.ends(f).u == cur || g.ends(f).v == cur)) next = f;
      DHS_ENSURE(next != kNoEdge, "broken cycle while tracing a handle");
      e = next;
    }
  }
  return out;
}

// Orders the blocks of a cactus whose block graph is a path, from the block
// holding `from` to the one holding `to`. Returns nullopt unless the
// structure is a chain with `from` and `to` in distinct end blocks and not
// cut vertices.
inline std::optional<std::vector<ChainBlock>> order_chain(const WeightedMultiGraph& q,
                                                          VertexId from, VertexId to) {
  const auto dec = blocks(q);
  const auto& bl = dec.blocks;
  if (bl.size() < 2) return std::nullopt;
  for (const auto& b : bl)
    if (!b.is_cycle_or_edge) return std::nullopt;
  auto is_cut = [&](VertexId x) {
    return std::binary_search(dec.cutvertices.begin(), dec.cutvertices.end(), x);
  };
  if (is_cut(from) || is_cut(to)) return std::nullopt;
  std::vector<std::vector<int>> blocks_of(q.vertex_capacity());
  for (int i = 0; i < static_cast<int>(bl.size()); ++i)
    for (VertexId x : bl[i].vertices) blocks_of[x].push_back(i);
  for (VertexId c : dec.cutvertices)
    if (blocks_of[c].size() != 2) return std::nullopt;
  std::vector<ChainBlock> chain;
  std::vector<char> used(bl.size(), 0);
  int cur = blocks_of[from].front();
  VertexId entry = from;
  while (true) {
    used[cur] = 1;
    const Block& b = bl[cur];
    VertexId exit = kNoVertex;
    int next = -1;
    for (VertexId x : b.vertices) {
      if (x == entry || !is_cut(x)) continue;
      const int other = blocks_of[x][0] == cur ? blocks_of[x][1] : blocks_of[x][0];
      if (used[other]) return std::nullopt;
      if (exit != kNoVertex) return std::nullopt;  // block with three attachments
      exit = x;
      next = other;
    }
    if (exit == kNoVertex) {
      if (!std::binary_search(b.vertices.begin(), b.vertices.end(), to)) return std::nullopt;
      exit = to;
    }
    ChainBlock cb;
    cb.entry = entry;
    cb.exit = exit;
    cb.vertices = b.vertices;
    cb.edges = b.edges;
    if (b.edges.size() == 1) {
      cb.kind = ChainBlockKind::Edge;
      cb.handles[0] = GraphPath{{entry, exit}, {b.edges[0]}};
    } else {
      cb.kind = b.edges.size() == 2 ? ChainBlockKind::DoubleEdge : ChainBlockKind::Cycle;
      cb.handles = cycle_handles(q, b.edges, entry, exit);
    }
    chain.push_back(std::move(cb));
    if (next == -1) break;
    cur = next;
    entry = exit;
  }
  if (chain.size() != bl.size()) return std::nullopt;
  return chain;
}

}  // namespace detail

// The bond of g with ends (v, w) that contains u as an internal vertex, if
// those ends determine one.
inline std::optional<Bond> analyze_bond(const WeightedMultiGraph& g, VertexId v, VertexId w,
                                        VertexId u) {
  if (v == w || u == v || u == w) return std::nullopt;
  if (!g.has_vertex(v) || !g.has_vertex(w) || !g.has_vertex(u)) return std::nullopt;
  const VertexId cap = g.vertex_capacity();
  std::vector<char> in(cap, 0);
  std::vector<VertexId> comp{u};
  in[u] = 1;
  in[v] = in[w] = 2;
  for (std::size_t h = 0; h < comp.size(); ++h)
    for (EdgeId e : g.incident(comp[h])) {
      const VertexId x = g.other(e, comp[h]);
      if (!in[x]) {
        in[x] = 1;
        comp.push_back(x);
      }
    }
  std::vector<EdgeId> q_edges;
  bool v_touches = false, w_touches = false;
  for (VertexId x : comp)
    for (EdgeId e : g.incident(x)) {
      const VertexId y = g.other(e, x);
      if (y == v) v_touches = true;
      if (y == w) w_touches = true;
      if (in[y] == 2 || x < y) q_edges.push_back(e);
    }
  if (!v_touches || !w_touches) return std::nullopt;
  std::sort(q_edges.begin(), q_edges.end());
  q_edges.erase(std::unique(q_edges.begin(), q_edges.end()), q_edges.end());
  const WeightedMultiGraph q = edge_subgraph(g, q_edges);
  auto chain = detail::order_chain(q, v, w);
  if (!chain) return std::nullopt;
  Bond b;
  b.v = v;
  b.w = w;
  std::sort(comp.begin(), comp.end());
  b.internal = comp;
  b.subgraph.vertices = comp;
  b.subgraph.vertices.push_back(v);
  b.subgraph.vertices.push_back(w);
  b.subgraph.edges = q_edges;
  b.subgraph.normalize();
  b.chain = std::move(*chain);
  b.is_double = std::any_of(b.chain.begin(), b.chain.end(),
                            [](const ChainBlock& c) { return c.kind != ChainBlockKind::Edge; });
  return b;
}

// Grows a bond around the reducible vertex u until no single end can be moved
// outward any more. Each step keeps the candidate with the largest interior.
inline Bond find_maximal_bond(const WeightedMultiGraph& h, VertexId u) {
  if (!h.has_vertex(u) || !is_reducible(h, u))
    throw PreconditionError("find_maximal_bond: vertex is not reducible");
  const auto nb = h.neighbors(u);
  auto current = analyze_bond(h, nb[0], nb[1], u);
  DHS_ENSURE(current.has_value(), "a reducible vertex does not span a bond");
  const VertexId cap = h.vertex_capacity();
  for (bool grew = true; grew;) {
    grew = false;
    for (int side = 0; side < 2; ++side) {
      const VertexId end = side == 0 ? current->v : current->w;
      const VertexId keep = side == 0 ? current->w : current->v;
      std::vector<char> inside(cap, 0);
      for (VertexId x : current->internal) inside[x] = 1;
      inside[keep] = inside[end] = 1;
      // Candidate new ends: everything reachable from `end` outside the bond
      // along a walk of vertices with two neighbours, plus the second
      // neighbourhood of `end`.
      std::vector<VertexId> cand;
      for (VertexId p : h.neighbors(end)) {
        if (inside[p]) continue;
        cand.push_back(p);
        for (VertexId r : h.neighbors(p))
          if (!inside[r]) cand.push_back(r);
        VertexId prev = end, cur = p;
        for (std::size_t steps = 0; steps < h.num_vertices(); ++steps) {
          const auto cn = h.neighbors(cur);
          if (cn.size() != 2) break;
          const VertexId next = cn[0] == prev ? cn[1] : cn[0];
          if (inside[next]) break;
          cand.push_back(next);
          prev = cur;
          cur = next;
        }
      }
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      std::optional<Bond> best;
      for (VertexId x : cand) {
        auto b = side == 0 ? analyze_bond(h, x, keep, u) : analyze_bond(h, keep, x, u);
        if (!b || b->internal.size() <= current->internal.size()) continue;
        if (!std::includes(b->internal.begin(), b->internal.end(), current->internal.begin(),
                           current->internal.end()))
          continue;
        if (!best || b->internal.size() > best->internal.size()) best = std::move(b);
      }
      if (best) {
        current = std::move(best);
        grew = true;
      }
    }
  }
  return *current;
}

struct EdgeOrigin {
  bool original = true;
  EdgeId base_edge = kNoEdge;  // when original
  int bond = -1;               // otherwise
};

struct ReducedGraph {
  WeightedMultiGraph base;   // the shaved graph H
  WeightedMultiGraph graph;  // the reduced graph
  std::vector<EdgeOrigin> provenance;          // indexed by edge id of graph
  std::vector<Bond> bonds;
  std::vector<std::vector<EdgeId>> bond_edges;  // edges of graph per bond
  std::vector<std::pair<EdgeId, EdgeId>> twins;
  std::vector<int> bond_of_internal;  // indexed by base vertex id, -1 if branch

  bool is_branch(VertexId v) const { return graph.has_vertex(v); }
  const EdgeOrigin& origin(EdgeId e) const { return provenance.at(e); }
  EdgeId twin_of(EdgeId e) const {
    for (const auto& [a, b] : twins) {
      if (a == e) return b;
      if (b == e) return a;
    }
    return kNoEdge;
  }
};

inline bool has_reduced_degree_property(const WeightedMultiGraph& g) {
  for (VertexId v : g.vertices()) {
    const auto nb = g.neighbors(v);
    if (nb.size() >= 3) continue;
    bool heavy = false;
    for (VertexId x : nb) heavy = heavy || g.multiplicity(v, x) >= 3;
    if (!heavy) return false;
  }
  return true;
}

inline ReducedGraph reduce(const WeightedMultiGraph& h) {
  ReducedGraph r;
  r.base = h;
  r.graph = h;
  const EdgeId base_cap = h.edge_capacity();
  r.provenance.resize(base_cap);
  for (EdgeId e = 0; e < base_cap; ++e) r.provenance[e] = {true, e, -1};
  r.bond_of_internal.assign(h.vertex_capacity(), -1);
  while (auto u = find_reducible_vertex(r.graph)) {
    Bond b = find_maximal_bond(r.graph, *u);
    for (EdgeId e : b.subgraph.edges)
      DHS_ENSURE(e < base_cap, "a maximal bond contains an edge made by an earlier reduction");
    const int index = static_cast<int>(r.bonds.size());
    for (VertexId x : b.internal) {
      DHS_ENSURE(r.bond_of_internal[x] == -1, "bond interiors overlap");
      r.bond_of_internal[x] = index;
      r.graph.remove_vertex(x);
    }
    std::vector<EdgeId> made{r.graph.add_edge(b.v, b.w)};
    if (b.is_double) made.push_back(r.graph.add_edge(b.v, b.w));
    r.provenance.resize(r.graph.edge_capacity());
    for (EdgeId e : made) r.provenance[e] = {false, kNoEdge, index};
    if (made.size() == 2) r.twins.emplace_back(made[0], made[1]);
    r.bond_edges.push_back(made);
    r.bonds.push_back(std::move(b));
  }
  DHS_ENSURE(has_reduced_degree_property(r.graph),
             "reduced graph has a vertex with too few neighbours");
  return r;
}

// Union of the subgraphs of the base graph that the given reduced edges
// stand for.
inline Subgraph primitive_subgraph(const ReducedGraph& r, const std::vector<EdgeId>& edges) {
  Subgraph out;
  std::vector<char> bond_done(r.bonds.size(), 0);
  for (EdgeId e : edges) {
    if (!r.graph.has_edge(e)) throw PreconditionError("primitive_subgraph: unknown edge");
    const EdgeOrigin& o = r.origin(e);
    if (o.original) {
      out.edges.push_back(o.base_edge);
      out.vertices.push_back(r.base.ends(o.base_edge).u);
      out.vertices.push_back(r.base.ends(o.base_edge).v);
    } else if (!bond_done[o.bond]) {
      bond_done[o.bond] = 1;
      const Subgraph& s = r.bonds[o.bond].subgraph;
      out.vertices.insert(out.vertices.end(), s.vertices.begin(), s.vertices.end());
      out.edges.insert(out.edges.end(), s.edges.begin(), s.edges.end());
    }
  }
  out.normalize();
  return out;
}

}  // namespace dhs
