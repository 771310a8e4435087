#pragma once

// Small diamonds in reduced graphs, rooted support graphs built from them,
// and the repair that keeps a support graph consistent with the handle list.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "dhs/core.hpp"
#include "dhs/multigraph.hpp"
#include "dhs/reduce.hpp"

namespace dhs {

// ---------------------------------------------------------------------------
// Diamond search

namespace detail {

struct TreeCycle {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  std::vector<VertexId> tree_children;  // tree edges identified by their child
};

// Fundamental cycle of the non-tree edge e = xy in a BFS tree.
inline TreeCycle fundamental_cycle(const WeightedMultiGraph& g, EdgeId e,
                                   const std::vector<VertexId>& parent,
                                   const std::vector<EdgeId>& parent_edge,
                                   const std::vector<int>& layer) {
  VertexId x = g.ends(e).u, y = g.ends(e).v;
  std::vector<VertexId> left{x}, right{y};
  std::vector<EdgeId> left_e, right_e;
  TreeCycle c;
  while (x != y) {
    if (layer[x] >= layer[y]) {
      c.tree_children.push_back(x);
      left_e.push_back(parent_edge[x]);
      x = parent[x];
      left.push_back(x);
    } else {
      c.tree_children.push_back(y);
      right_e.push_back(parent_edge[y]);
      y = parent[y];
      right.push_back(y);
    }
  }
  // left ends at the lca, right too; walk left forward then right backward.
  c.vertices = left;
  c.edges = left_e;
  for (std::size_t i = right.size() - 1; i-- > 0;) {
    c.vertices.push_back(right[i]);
    c.edges.push_back(right_e[i]);
  }
  c.edges.push_back(e);  // closes right[0] = original y back to left[0]
  std::sort(c.tree_children.begin(), c.tree_children.end());
  return c;
}

// Smallest theta made of c1 and one segment of c2 that leaves c1.
inline std::optional<Diamond> theta_from_cycle_pair(const WeightedMultiGraph& g,
                                                    const std::vector<VertexId>& c1v,
                                                    const std::vector<EdgeId>& c1e,
                                                    const std::vector<VertexId>& c2v,
                                                    const std::vector<EdgeId>& c2e) {
  std::vector<int> pos(g.vertex_capacity(), -1);
  for (std::size_t i = 0; i < c1v.size(); ++i) pos[c1v[i]] = static_cast<int>(i);
  const std::set<EdgeId> on_c1(c1e.begin(), c1e.end());
  const std::size_t k = c2v.size();
  // Start the walk at a vertex of c2 lying on c1.
  std::size_t start = k;
  for (std::size_t i = 0; i < k; ++i)
    if (pos[c2v[i]] >= 0) {
      start = i;
      break;
    }
  if (start == k) return std::nullopt;
  std::optional<GraphPath> best;
  GraphPath cur;
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t i = (start + step) % k;
    const EdgeId e = c2e[i];
    const VertexId nxt = c2v[(i + 1) % k];
    if (cur.vertices.empty()) {
      if (on_c1.count(e)) continue;
      cur.vertices = {c2v[i]};
    }
    cur.vertices.push_back(nxt);
    cur.edges.push_back(e);
    if (pos[nxt] >= 0) {
      if (cur.front() != nxt && (!best || cur.length() < best->length())) best = cur;
      cur = {};
    }
  }
  if (!best) return std::nullopt;
  return theta_from_cycle_and_ear(c1v, c1e, pos, *best);
}

// Shortest path between two distinct vertices of a cycle that uses no cycle
// edge and no cycle vertex in its interior.
inline std::optional<GraphPath> shortest_ear(const WeightedMultiGraph& g,
                                             const std::vector<VertexId>& cyc,
                                             const std::vector<EdgeId>& cyc_edges,
                                             const std::vector<int>& pos) {
  const std::set<EdgeId> on_cycle(cyc_edges.begin(), cyc_edges.end());
  std::optional<GraphPath> best;
  std::vector<int> dist(g.vertex_capacity(), -1);
  std::vector<VertexId> parent(g.vertex_capacity(), kNoVertex);
  std::vector<EdgeId> parent_edge(g.vertex_capacity(), kNoEdge);
  for (VertexId a : cyc) {
    std::vector<VertexId> touched;
    std::queue<VertexId> q;
    dist[a] = 0;
    touched.push_back(a);
    q.push(a);
    while (!q.empty()) {
      const VertexId x = q.front();
      q.pop();
      if (best && dist[x] + 1 >= static_cast<int>(best->length())) break;
      for (EdgeId e : g.incident(x)) {
        if (on_cycle.count(e)) continue;
        const VertexId y = g.other(e, x);
        if (pos[y] >= 0) {
          if (y == a) continue;
          GraphPath p;
          p.vertices = {y};
          p.edges = {e};
          for (VertexId z = x; z != a; z = parent[z]) {
            p.vertices.push_back(z);
            p.edges.push_back(parent_edge[z]);
          }
          p.vertices.push_back(a);
          if (!best || p.length() < best->length()) best = p.reversed();
          continue;
        }
        if (dist[y] >= 0) continue;
        dist[y] = dist[x] + 1;
        parent[y] = x;
        parent_edge[y] = e;
        touched.push_back(y);
        q.push(y);
      }
    }
    for (VertexId t : touched) dist[t] = -1;
  }
  return best;
}

}  // namespace detail

// Diamond of size at most 6 log_{3/2} n + 8 in a simple graph with minimum
// degree 3, from fundamental cycles of breadth-first trees.
inline Diamond find_log_diamond_simple(const WeightedMultiGraph& g) {
  for (VertexId v : g.vertices()) {
    if (g.degree(v) < 3) throw PreconditionError("find_log_diamond_simple: degree below 3");
    if (g.neighbors(v).size() != static_cast<std::size_t>(g.degree(v)))
      throw PreconditionError("find_log_diamond_simple: graph has parallel edges");
  }
  const VertexId cap = g.vertex_capacity();
  for (const auto& comp : connected_components(g)) {
    const VertexId root = comp.front();
    std::vector<int> layer(cap, -1);
    std::vector<VertexId> parent(cap, kNoVertex);
    std::vector<EdgeId> parent_edge(cap, kNoEdge);
    std::queue<VertexId> q;
    layer[root] = 0;
    q.push(root);
    while (!q.empty()) {
      const VertexId x = q.front();
      q.pop();
      for (EdgeId e : g.incident(x)) {
        const VertexId y = g.other(e, x);
        if (layer[y] >= 0) continue;
        layer[y] = layer[x] + 1;
        parent[y] = x;
        parent_edge[y] = e;
        q.push(y);
      }
    }
    std::vector<std::pair<int, EdgeId>> nontree;
    std::set<EdgeId> seen;
    for (VertexId x : comp)
      for (EdgeId e : g.incident(x)) {
        if (!seen.insert(e).second) continue;
        const VertexId a = g.ends(e).u, b = g.ends(e).v;
        if (parent_edge[a] == e || parent_edge[b] == e) continue;
        nontree.emplace_back(std::max(layer[a], layer[b]), e);
      }
    std::sort(nontree.begin(), nontree.end());
    std::vector<detail::TreeCycle> cycles;
    std::map<VertexId, std::vector<std::size_t>> owners;
    std::size_t i = 0;
    while (i < nontree.size()) {
      const int key = nontree[i].first;
      const std::size_t group_start = cycles.size();
      for (; i < nontree.size() && nontree[i].first == key; ++i) {
        cycles.push_back(detail::fundamental_cycle(g, nontree[i].second, parent, parent_edge, layer));
        for (VertexId c : cycles.back().tree_children) owners[c].push_back(cycles.size() - 1);
      }
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& [child, list] : owners)
        for (std::size_t a = 0; a < list.size(); ++a)
          for (std::size_t b = a + 1; b < list.size(); ++b)
            if (list[b] >= group_start) pairs.emplace(list[a], list[b]);
      std::optional<Diamond> best;
      for (const auto& [a, b] : pairs) {
        const auto& ca = cycles[a];
        const auto& cb = cycles[b];
        for (int order = 0; order < 2; ++order) {
          const auto& c1 = order == 0 ? ca : cb;
          const auto& c2 = order == 0 ? cb : ca;
          auto d = detail::theta_from_cycle_pair(g, c1.vertices, c1.edges, c2.vertices, c2.edges);
          DHS_ENSURE(d.has_value(), "cycles sharing a tree edge produced no theta");
          if (!best || d->size() < best->size()) best = d;
        }
      }
      if (best) {
        DHS_ENSURE(rational_le_real(Rational(static_cast<long>(best->size())),
                                    small_diamond_bound(g.num_vertices())),
                   "breadth-first diamond exceeds the logarithmic bound");
        return *best;
      }
    }
    throw InternalError("component with minimum degree 3 has edge-disjoint fundamental cycles");
  }
  throw PreconditionError("find_log_diamond_simple: empty graph");
}

// Small diamond in a nonempty reduced graph: three parallel edges when some
// pair has them, otherwise a diamond of the graph with each parallel pair
// collapsed to its lower edge.
inline Diamond find_log_diamond_reduced(const ReducedGraph& r) {
  const auto& g = r.graph;
  if (g.empty()) throw PreconditionError("find_log_diamond_reduced: empty graph");
  for (VertexId u : g.vertices())
    for (VertexId v : g.neighbors(u)) {
      if (v <= u) continue;
      const auto par = g.edges_between(u, v);
      if (par.size() >= 3) {
        Diamond d;
        d.a = u;
        d.b = v;
        for (int t = 0; t < 3; ++t) d.paths[t] = GraphPath{{u, v}, {par[t]}};
        return d;
      }
    }
  std::vector<EdgeId> keep;
  for (VertexId u : g.vertices())
    for (VertexId v : g.neighbors(u))
      if (v > u) keep.push_back(g.edges_between(u, v).front());
  return find_log_diamond_simple(edge_subgraph(g, keep));
}

// Smallest diamond with at most max_edges edges, if one exists. Exact: the
// two shortest paths of such a theta form a cycle of length at most
// 2 * max_edges / 3 and the third path is at least a shortest ear of it.
inline std::optional<Diamond> find_diamond_within(const WeightedMultiGraph& g, std::size_t max_edges) {
  if (max_edges < 3) return std::nullopt;
  std::optional<Diamond> best;
  std::vector<int> pos(g.vertex_capacity(), -1);
  for (const auto& c : enumerate_cycles(g, 2 * max_edges / 3)) {
    for (std::size_t i = 0; i < c.vertices.size(); ++i) pos[c.vertices[i]] = static_cast<int>(i);
    if (auto ear = detail::shortest_ear(g, c.vertices, c.edges, pos)) {
      const std::size_t size = c.length() + ear->length();
      if (size <= max_edges && (!best || size < best->size()))
        best = detail::theta_from_cycle_and_ear(c.vertices, c.edges, pos, *ear);
    }
    for (VertexId v : c.vertices) pos[v] = -1;
    if (best && best->size() == 3) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Support graphs

enum class SupportType { Diamond = 1, Necklace = 2, ParallelPair = 3, CompleteFour = 4 };

// A cycle inside a double piece; both handles run from end_a to end_b.
struct PieceCycle {
  VertexId end_a = kNoVertex;
  VertexId end_b = kNoVertex;
  std::array<GraphPath, 2> handles;

  std::vector<VertexId> internal() const {
    auto out = handles[0].internal();
    const auto more = handles[1].internal();
    out.insert(out.end(), more.begin(), more.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

// A path (simple piece) or a chain of cycles and edges (double piece) between
// two branch vertices; its internal vertices have all their edges inside it.
struct Piece {
  VertexId a = kNoVertex;
  VertexId b = kNoVertex;
  bool is_double = false;
  GraphPath path;                  // simple pieces, from a to b
  std::vector<PieceCycle> cycles;  // double pieces, in order from a to b
  Subgraph sub;                    // all vertices (ends included) and edges

  std::vector<VertexId> internal() const {
    std::vector<VertexId> out;
    for (VertexId v : sub.vertices)
      if (v != a && v != b) out.push_back(v);
    return out;
  }
};

struct SupportGraph {
  SupportType type = SupportType::Diamond;
  Subgraph sub;  // in the base graph H
  std::vector<Piece> pieces;

  // Piece count that bounds the row ratio of the row built from S.
  std::size_t measure() const {
    return type == SupportType::Necklace ? pieces.size() + 1 : pieces.size();
  }
};

// (T, B) are two internally disjoint v-w paths whose internal vertices have
// exactly two neighbours in H; T is the top.
struct Triple {
  GraphPath top;
  GraphPath bottom;
  VertexId v = kNoVertex;
  VertexId w = kNoVertex;
  int creation_index = 0;
};

namespace detail {

inline Piece simple_piece(const GraphPath& p) {
  Piece pc;
  pc.a = p.front();
  pc.b = p.back();
  pc.path = p;
  pc.sub.vertices = p.vertices;
  pc.sub.edges = p.edges;
  pc.sub.normalize();
  return pc;
}

// Double piece made of two internally disjoint paths with the same ends.
inline Piece cycle_piece(const GraphPath& p, const GraphPath& q) {
  DHS_ENSURE(p.front() == q.front() && p.back() == q.back(), "cycle piece paths disagree on ends");
  Piece pc;
  pc.a = p.front();
  pc.b = p.back();
  pc.is_double = true;
  pc.cycles.push_back({pc.a, pc.b, {p, q}});
  pc.sub.vertices = p.vertices;
  pc.sub.vertices.insert(pc.sub.vertices.end(), q.vertices.begin(), q.vertices.end());
  pc.sub.edges = p.edges;
  pc.sub.edges.insert(pc.sub.edges.end(), q.edges.begin(), q.edges.end());
  pc.sub.normalize();
  return pc;
}

inline Piece bond_piece(const Bond& b, VertexId from) {
  DHS_ENSURE(b.is_double, "bond_piece on a simple bond");
  Piece pc;
  pc.a = b.v;
  pc.b = b.w;
  pc.is_double = true;
  for (const auto& cb : b.chain)
    if (cb.kind != ChainBlockKind::Edge) pc.cycles.push_back({cb.entry, cb.exit, cb.handles});
  pc.sub = b.subgraph;
  if (from == b.w) {
    std::swap(pc.a, pc.b);
    std::reverse(pc.cycles.begin(), pc.cycles.end());
    for (auto& c : pc.cycles) {
      std::swap(c.end_a, c.end_b);
      for (auto& h : c.handles) h = h.reversed();
    }
  }
  return pc;
}

// The base-graph path that a non-twin reduced edge stands for, from `from`.
inline GraphPath primitive_path(const ReducedGraph& r, EdgeId e, VertexId from) {
  const EdgeOrigin& o = r.origin(e);
  GraphPath p;
  if (o.original) {
    p.vertices = {from, r.base.other(o.base_edge, from)};
    p.edges = {o.base_edge};
    return p;
  }
  const Bond& b = r.bonds[o.bond];
  DHS_ENSURE(!b.is_double, "primitive_path on a twin edge");
  p.vertices = {b.v};
  for (const auto& cb : b.chain) p = join(p, cb.handles[0]);
  return p.front() == from ? p : p.reversed();
}

// Piece of H standing for the reduced edges between x and y (one or two).
inline Piece piece_between(const ReducedGraph& r, VertexId x, VertexId y,
                           const std::vector<EdgeId>& par) {
  DHS_ENSURE(par.size() == 1 || par.size() == 2, "piece_between with more than two edges");
  Piece p;
  if (par.size() == 1) p = simple_piece(primitive_path(r, par[0], x));
  else if (r.twin_of(par[0]) == par[1]) p = bond_piece(r.bonds[r.origin(par[0]).bond], x);
  else p = cycle_piece(primitive_path(r, par[0], x), primitive_path(r, par[1], x));
  DHS_ENSURE(p.a == x && p.b == y, "piece does not join the requested ends");
  return p;
}

inline Subgraph union_of(const std::vector<Piece>& pieces) {
  Subgraph s;
  for (const auto& p : pieces) {
    s.vertices.insert(s.vertices.end(), p.sub.vertices.begin(), p.sub.vertices.end());
    s.edges.insert(s.edges.end(), p.sub.edges.begin(), p.sub.edges.end());
  }
  s.normalize();
  return s;
}

inline std::vector<EdgeId> induced_edges(const WeightedMultiGraph& h, const std::vector<VertexId>& vs) {
  std::vector<EdgeId> out;
  for (VertexId v : vs)
    for (EdgeId e : h.incident(v))
      if (std::binary_search(vs.begin(), vs.end(), h.other(e, v))) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline SupportGraph from_pieces(SupportType type, std::vector<Piece> pieces) {
  SupportGraph s;
  s.type = type;
  s.pieces = std::move(pieces);
  s.sub = union_of(s.pieces);
  return s;
}

inline bool is_simple_theta(const WeightedMultiGraph& k) {
  if (connected_components(k).size() != 1 || k.num_edges() != k.num_vertices() + 1) return false;
  int branch = 0;
  for (VertexId v : k.vertices()) {
    if (k.neighbors(v).size() != static_cast<std::size_t>(k.degree(v))) return false;
    if (k.degree(v) == 3) ++branch;
    else if (k.degree(v) != 2) return false;
  }
  return branch == 2;
}

// Cyclic vertex order of a connected graph whose underlying simple graph is
// a cycle.
inline std::optional<std::vector<VertexId>> cycle_order(const WeightedMultiGraph& k) {
  const auto vs = k.vertices();
  if (vs.size() < 3 || connected_components(k).size() != 1) return std::nullopt;
  for (VertexId v : vs)
    if (k.neighbors(v).size() != 2) return std::nullopt;
  std::vector<VertexId> order{vs.front()};
  VertexId prev = kNoVertex, cur = vs.front();
  while (true) {
    const auto nb = k.neighbors(cur);
    const VertexId next = nb[0] != prev ? nb[0] : nb[1];
    if (next == vs.front()) break;
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  if (order.size() != vs.size()) return std::nullopt;
  return order;
}

}  // namespace detail

// True when S is induced in H, piece ends are branch vertices, piece
// interiors are non-branch vertices with no edges leaving their piece, and
// the pieces partition S's edges.
inline bool is_rooted(const ReducedGraph& r, const SupportGraph& s) {
  const auto& h = r.base;
  for (VertexId v : s.sub.vertices)
    if (!h.has_vertex(v)) return false;
  if (detail::induced_edges(h, s.sub.vertices) != s.sub.edges) return false;
  if (s.type == SupportType::ParallelPair || s.type == SupportType::CompleteFour) {
    for (VertexId v : s.sub.vertices)
      if (!r.is_branch(v)) return false;
    return true;
  }
  std::size_t edge_total = 0;
  std::set<VertexId> interiors;
  for (const auto& p : s.pieces) {
    if (!r.is_branch(p.a) || !r.is_branch(p.b)) return false;
    edge_total += p.sub.edges.size();
    for (VertexId x : p.internal()) {
      if (r.is_branch(x) || !interiors.insert(x).second) return false;
      for (EdgeId e : h.incident(x))
        if (!p.sub.contains_edge(e)) return false;
    }
  }
  return edge_total == s.sub.edges.size();
}

// Rooted support graph of at most ||d|| pieces inside the primitive subgraph
// of a diamond d of the reduced graph.
inline SupportGraph extract_support_graph(const ReducedGraph& r, const Diamond& d) {
  const auto& g = r.graph;
  if (!is_valid_diamond(g, d)) throw PreconditionError("extract_support_graph: not a diamond");
  // Vertex-minimal induced subgraph that still holds a diamond.
  std::vector<VertexId> kv = d.vertex_set();
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (std::size_t i = 0; i < kv.size(); ++i) {
      auto cand = kv;
      cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(i));
      if (!is_forest_of_cacti(induced_subgraph(g, cand))) {
        kv = std::move(cand);
        shrunk = true;
        break;
      }
    }
  }
  const auto k = induced_subgraph(g, kv);
  int mu = 1;
  for (VertexId u : kv)
    for (VertexId v : k.neighbors(u)) mu = std::max(mu, k.multiplicity(u, v));

  SupportGraph s;
  if (mu == 1) {
    if (kv.size() == 4 && k.num_edges() == 6) {
      const auto es = k.edges();
      EdgeId drop = kNoEdge;
      for (EdgeId e : es)
        if (!r.origin(e).original) {
          drop = e;
          break;
        }
      if (drop == kNoEdge) {
        s.type = SupportType::CompleteFour;
        for (VertexId v : kv) s.sub.vertices.push_back(v);
        s.sub.edges = detail::induced_edges(r.base, s.sub.vertices);
      } else {
        std::vector<Piece> pieces;
        for (EdgeId e : es)
          if (e != drop) pieces.push_back(detail::piece_between(r, g.ends(e).u, g.ends(e).v, {e}));
        s = detail::from_pieces(SupportType::Diamond, std::move(pieces));
      }
    } else {
      DHS_ENSURE(detail::is_simple_theta(k), "minimal simple support is neither a theta nor K4");
      std::vector<Piece> pieces;
      for (EdgeId e : k.edges()) pieces.push_back(detail::piece_between(r, g.ends(e).u, g.ends(e).v, {e}));
      s = detail::from_pieces(SupportType::Diamond, std::move(pieces));
    }
  } else if (mu == 2) {
    const auto order = detail::cycle_order(k);
    DHS_ENSURE(order.has_value(), "minimal support with doubled edges is not a necklace");
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < order->size(); ++i) {
      const VertexId x = (*order)[i], y = (*order)[(i + 1) % order->size()];
      pieces.push_back(detail::piece_between(r, x, y, k.edges_between(x, y)));
    }
    s = detail::from_pieces(SupportType::Necklace, std::move(pieces));
  } else {
    DHS_ENSURE(kv.size() == 2, "minimal support with a heavy pair has more than two vertices");
    const auto& h = r.base;
    for (VertexId u : h.vertices())
      for (VertexId v : h.neighbors(u))
        if (v > u && h.multiplicity(u, v) >= 4) {
          s.type = SupportType::ParallelPair;
          s.sub.vertices = {u, v};
          s.sub.edges = h.edges_between(u, v);
          DHS_ENSURE(is_rooted(r, s), "parallel pair support is not rooted");
          return s;
        }
    const VertexId v = kv[0], w = kv[1];
    std::vector<GraphPath> direct, simple_bonds;
    std::vector<int> twin_bonds;
    for (EdgeId e : k.edges_between(v, w)) {
      const EdgeOrigin& o = r.origin(e);
      if (o.original) direct.push_back(detail::primitive_path(r, e, v));
      else if (!r.bonds[o.bond].is_double) simple_bonds.push_back(detail::primitive_path(r, e, v));
      else if (std::find(twin_bonds.begin(), twin_bonds.end(), o.bond) == twin_bonds.end())
        twin_bonds.push_back(o.bond);
    }
    std::vector<Piece> pieces;
    if (direct.size() >= 3 || twin_bonds.empty()) {
      for (const auto& p : direct) pieces.push_back(detail::simple_piece(p));
      for (const auto& p : simple_bonds)
        if (pieces.size() < 3) pieces.push_back(detail::simple_piece(p));
      DHS_ENSURE(pieces.size() == 3, "three parallel reduced edges do not give three paths");
      s = detail::from_pieces(SupportType::Diamond, std::move(pieces));
    } else {
      pieces.push_back(detail::bond_piece(r.bonds[twin_bonds[0]], v));
      // The second piece runs back from w so the pieces close up in order.
      if (direct.size() == 2)
        pieces.push_back(detail::cycle_piece(direct[0].reversed(), direct[1].reversed()));
      else if (direct.size() == 1) pieces.push_back(detail::simple_piece(direct[0].reversed()));
      else {
        // Next lowest reduced edge that is not one of the chosen twins.
        for (EdgeId e : k.edges_between(v, w)) {
          const EdgeOrigin& o = r.origin(e);
          if (o.bond == twin_bonds[0]) continue;
          if (r.bonds[o.bond].is_double) pieces.push_back(detail::bond_piece(r.bonds[o.bond], w));
          else pieces.push_back(detail::simple_piece(detail::primitive_path(r, e, w)));
          break;
        }
      }
      DHS_ENSURE(pieces.size() == 2, "heavy pair necklace lacks a second piece");
      s = detail::from_pieces(SupportType::Necklace, std::move(pieces));
    }
  }
  DHS_ENSURE(is_rooted(r, s), "support graph is not rooted");
  DHS_ENSURE(s.type == SupportType::CompleteFour || s.type == SupportType::ParallelPair ||
                 s.pieces.size() <= d.size(),
             "support graph has more pieces than the diamond has edges");
  return s;
}

// ---------------------------------------------------------------------------
// Consistency with the handle list

namespace detail {

inline bool path_inside(const GraphPath& p, const Subgraph& s) {
  for (VertexId v : p.vertices)
    if (!s.contains_vertex(v)) return false;
  for (EdgeId e : p.edges)
    if (!s.contains_edge(e)) return false;
  return true;
}

inline bool meets_interior(const GraphPath& p, const Subgraph& s) {
  for (VertexId v : p.internal())
    if (s.contains_vertex(v)) return true;
  return false;
}

// v-w paths through S when S is a necklace of pieces all joining v and w.
inline std::vector<GraphPath> paths_between(const SupportGraph& s, VertexId v, VertexId w) {
  std::vector<GraphPath> out;
  for (const auto& p : s.pieces) {
    DHS_ENSURE((p.a == v && p.b == w) || (p.a == w && p.b == v),
               "repair expects every piece to join the triple's ends");
    const bool flip = p.a != v;
    if (!p.is_double) {
      out.push_back(flip ? p.path.reversed() : p.path);
    } else {
      DHS_ENSURE(p.cycles.size() == 1, "repair expects a double piece made of one cycle");
      for (const auto& h : p.cycles[0].handles) out.push_back(flip ? h.reversed() : h);
    }
  }
  return out;
}

// Diamond on three of the given v-w paths: every direct edge, then T, B and
// the rest in order, so the result is induced and keeps T when it can.
inline SupportGraph diamond_from_paths(const ReducedGraph& r, std::vector<GraphPath> paths,
                                       const Triple& t) {
  std::vector<GraphPath> chosen;
  auto take = [&](auto pred) {
    for (auto it = paths.begin(); it != paths.end() && chosen.size() < 3;) {
      if (pred(*it)) {
        chosen.push_back(*it);
        it = paths.erase(it);
      } else {
        ++it;
      }
    }
  };
  std::size_t direct = 0;
  for (const auto& p : paths) direct += p.length() == 1;
  DHS_ENSURE(direct <= 3, "more than three direct edges between a triple's ends");
  take([](const GraphPath& p) { return p.length() == 1; });
  take([&](const GraphPath& p) { return p == t.top; });
  take([&](const GraphPath& p) { return p == t.bottom; });
  take([](const GraphPath&) { return true; });
  DHS_ENSURE(chosen.size() == 3, "fewer than three paths for the repaired diamond");
  std::vector<Piece> pieces;
  for (const auto& p : chosen) pieces.push_back(simple_piece(p));
  auto s = from_pieces(SupportType::Diamond, std::move(pieces));
  DHS_ENSURE(is_rooted(r, s), "repaired diamond is not rooted");
  return s;
}

}  // namespace detail

inline bool is_consistent(const SupportGraph& s, const Triple& t) {
  if (s.type == SupportType::ParallelPair || s.type == SupportType::CompleteFour) return true;
  const bool top_in = detail::meets_interior(t.top, s.sub);
  const bool bottom_in = detail::meets_interior(t.bottom, s.sub);
  if (!top_in && !bottom_in) return true;
  if (!bottom_in) {
    for (const auto& p : s.pieces)
      if (!p.is_double && detail::path_inside(t.top, p.sub)) return true;
  }
  if (s.type == SupportType::Diamond)
    return detail::path_inside(t.top, s.sub) && detail::path_inside(t.bottom, s.sub);
  for (const auto& p : s.pieces)
    if (p.is_double && detail::path_inside(t.top, p.sub) && detail::path_inside(t.bottom, p.sub))
      return true;
  return false;
}

inline bool is_consistent(const SupportGraph& s, const std::vector<Triple>& list) {
  for (const auto& t : list)
    if (!is_consistent(s, t)) return false;
  return true;
}

// Repairs S until it is consistent with every triple. The measure never grows
// and the result stays rooted.
inline SupportGraph make_consistent(SupportGraph s, const std::vector<Triple>& list,
                                    const ReducedGraph& r) {
  if (s.type == SupportType::ParallelPair || s.type == SupportType::CompleteFour) return s;
  const auto& h = r.base;
  const std::size_t budget = (list.size() + 1) * (h.num_vertices() + 1);
  for (std::size_t round = 0;; ++round) {
    DHS_ENSURE(round <= budget, "consistency repair does not terminate");
    const Triple* bad = nullptr;
    for (const auto& t : list)
      if (!is_consistent(s, t)) {
        bad = &t;
        break;
      }
    if (!bad) return s;
    const Triple& t = *bad;
    const std::size_t before = s.measure();
    const bool top_in = detail::meets_interior(t.top, s.sub);
    const bool bottom_in = detail::meets_interior(t.bottom, s.sub);
    const GraphPath& p = top_in ? t.top : t.bottom;
    const GraphPath& other = top_in ? t.bottom : t.top;
    DHS_ENSURE(detail::path_inside(p, s.sub), "support meets a handle without containing it");
    if ((top_in && bottom_in) || other.trivial()) {
      s = detail::diamond_from_paths(r, detail::paths_between(s, t.v, t.w), t);
    } else {
      const Piece* q = nullptr;
      std::size_t qi = 0;
      for (std::size_t i = 0; i < s.pieces.size(); ++i)
        if (detail::path_inside(p, s.pieces[i].sub)) {
          q = &s.pieces[i];
          qi = i;
          break;
        }
      DHS_ENSURE(q != nullptr, "no piece contains the handle");
      DHS_ENSURE(std::minmax(q->a, q->b) == std::minmax(t.v, t.w),
                 "piece holding a handle does not end at the handle's ends");
      if (!q->is_double) {
        DHS_ENSURE(!top_in, "simple piece holds the top handle of an inconsistent triple");
        const bool flip = q->a != t.v;
        s.pieces[qi] = detail::simple_piece(flip ? t.top.reversed() : t.top);
        s.sub = detail::union_of(s.pieces);
      } else {
        DHS_ENSURE(q->cycles.size() == 1, "double piece holding a handle has several cycles");
        std::vector<GraphPath> paths;
        const bool flip = q->a != t.v;
        for (const auto& hd : q->cycles[0].handles) paths.push_back(flip ? hd.reversed() : hd);
        paths.push_back(other);
        for (EdgeId e : h.edges_between(t.v, t.w))
          if (!q->sub.contains_edge(e)) paths.push_back(GraphPath{{t.v, t.w}, {e}});
        s = detail::diamond_from_paths(r, std::move(paths), t);
      }
    }
    DHS_ENSURE(is_rooted(r, s), "repair broke rootedness");
    DHS_ENSURE(s.measure() <= before, "repair increased the support measure");
  }
}

}  // namespace dhs
