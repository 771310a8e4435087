#pragma once

// Vertex-weighted multigraphs: storage, block decomposition, cactus
// recognition, theta (diamond) extraction and short-cycle counting.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "dhs/core.hpp"

namespace dhs {

struct EdgeEnds {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
};

// Undirected multigraph without loops. Vertex and edge ids are dense
// indices into capacity-sized tables and stay valid when other elements are
// removed.
class WeightedMultiGraph {
 public:
  WeightedMultiGraph() = default;

  VertexId add_vertex(Rational cost = Rational(1)) {
    if (sgn(cost) < 0) throw PreconditionError("negative vertex cost");
    const auto id = static_cast<VertexId>(alive_.size());
    alive_.push_back(1);
    cost_.push_back(std::move(cost));
    incidence_.emplace_back();
    ++num_vertices_;
    return id;
  }

  EdgeId add_edge(VertexId u, VertexId v) {
    if (!has_vertex(u) || !has_vertex(v))
      throw PreconditionError("edge endpoint is not a vertex");
    if (u == v) throw PreconditionError("loops are not allowed");
    const auto id = static_cast<EdgeId>(ends_.size());
    ends_.push_back({u, v});
    edge_alive_.push_back(1);
    incidence_[u].push_back(id);
    incidence_[v].push_back(id);
    ++num_edges_;
    return id;
  }

  // Inserts an edge under a caller-chosen id beyond the current capacity.
  EdgeId add_edge_with_id(EdgeId id, VertexId u, VertexId v) {
    if (id < edge_capacity()) throw PreconditionError("edge id already used");
    ends_.resize(id, EdgeEnds{});
    edge_alive_.resize(id, 0);
    return add_edge(u, v);
  }

  void remove_edge(EdgeId e) {
    if (!has_edge(e)) return;
    const auto [u, v] = ends_[e];
    erase_incidence(u, e);
    erase_incidence(v, e);
    edge_alive_[e] = 0;
    --num_edges_;
  }

  void remove_vertex(VertexId v) {
    if (!has_vertex(v)) return;
    const auto incident = incidence_[v];
    for (EdgeId e : incident) remove_edge(e);
    alive_[v] = 0;
    --num_vertices_;
  }

  bool has_vertex(VertexId v) const {
    return v >= 0 && v < vertex_capacity() && alive_[v];
  }
  bool has_edge(EdgeId e) const {
    return e >= 0 && e < edge_capacity() && edge_alive_[e];
  }

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return num_edges_; }
  bool empty() const { return num_vertices_ == 0; }
  VertexId vertex_capacity() const { return static_cast<VertexId>(alive_.size()); }
  EdgeId edge_capacity() const { return static_cast<EdgeId>(ends_.size()); }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(num_vertices_);
    for (VertexId v = 0; v < vertex_capacity(); ++v)
      if (alive_[v]) out.push_back(v);
    return out;
  }

  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    out.reserve(num_edges_);
    for (EdgeId e = 0; e < edge_capacity(); ++e)
      if (edge_alive_[e]) out.push_back(e);
    return out;
  }

  const std::vector<EdgeId>& incident(VertexId v) const { return incidence_.at(v); }
  int degree(VertexId v) const { return static_cast<int>(incidence_.at(v).size()); }
  EdgeEnds ends(EdgeId e) const { return ends_.at(e); }

  VertexId other(EdgeId e, VertexId v) const {
    const auto& [a, b] = ends_.at(e);
    return a == v ? b : a;
  }

  const Rational& cost(VertexId v) const { return cost_.at(v); }
  void set_cost(VertexId v, Rational c) {
    if (sgn(c) < 0) throw PreconditionError("negative vertex cost");
    cost_.at(v) = std::move(c);
  }

  // Distinct neighbours in ascending order.
  std::vector<VertexId> neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (EdgeId e : incidence_.at(v)) out.push_back(other(e, v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<EdgeId> edges_between(VertexId u, VertexId v) const {
    std::vector<EdgeId> out;
    for (EdgeId e : incidence_.at(u))
      if (other(e, u) == v) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
  }

  int multiplicity(VertexId u, VertexId v) const {
    return static_cast<int>(edges_between(u, v).size());
  }

  friend bool operator==(const WeightedMultiGraph& a, const WeightedMultiGraph& b) {
    if (a.vertices() != b.vertices() || a.edges() != b.edges()) return false;
    for (VertexId v : a.vertices())
      if (a.cost(v) != b.cost(v)) return false;
    for (EdgeId e : a.edges()) {
      const auto x = a.ends(e), y = b.ends(e);
      if (std::minmax(x.u, x.v) != std::minmax(y.u, y.v)) return false;
    }
    return true;
  }

 private:
  void erase_incidence(VertexId v, EdgeId e) {
    auto& list = incidence_[v];
    list.erase(std::find(list.begin(), list.end(), e));
  }

  std::vector<char> alive_;
  std::vector<Rational> cost_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::vector<EdgeEnds> ends_;
  std::vector<char> edge_alive_;
  std::size_t num_vertices_ = 0;
  std::size_t num_edges_ = 0;
};

// A vertex/edge selection inside some host graph, both lists sorted.
struct Subgraph {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  void normalize() {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  bool contains_vertex(VertexId v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }
  bool contains_edge(EdgeId e) const {
    return std::binary_search(edges.begin(), edges.end(), e);
  }
};

// A walk given by its vertex sequence and the edges joining consecutive
// vertices (edges.size() == vertices.size() - 1).
struct GraphPath {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  bool trivial() const { return vertices.size() <= 2; }
  std::vector<VertexId> internal() const {
    if (vertices.size() <= 2) return {};
    return {vertices.begin() + 1, vertices.end() - 1};
  }
  GraphPath reversed() const {
    return {{vertices.rbegin(), vertices.rend()}, {edges.rbegin(), edges.rend()}};
  }
  friend bool operator==(const GraphPath&, const GraphPath&) = default;
};

// Three internally disjoint paths joining the branch pair (a, b).
struct Diamond {
  VertexId a = kNoVertex;
  VertexId b = kNoVertex;
  std::array<GraphPath, 3> paths;

  std::size_t size() const {
    return paths[0].length() + paths[1].length() + paths[2].length();
  }
  std::vector<VertexId> vertex_set() const {
    std::vector<VertexId> out;
    for (const auto& p : paths) out.insert(out.end(), p.vertices.begin(), p.vertices.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::vector<EdgeId> edge_set() const {
    std::vector<EdgeId> out;
    for (const auto& p : paths) out.insert(out.end(), p.edges.begin(), p.edges.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

struct Block {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  bool is_cycle_or_edge = true;  // ||B|| <= |B|
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  std::vector<VertexId> cutvertices;
};

// ---------------------------------------------------------------------------
// Basic derived graphs

inline WeightedMultiGraph delete_vertices(const WeightedMultiGraph& g,
                                          const std::vector<VertexId>& s) {
  WeightedMultiGraph out = g;
  for (VertexId v : s) {
    if (!g.has_vertex(v)) throw PreconditionError("deleting a non-vertex");
    out.remove_vertex(v);
  }
  return out;
}

inline WeightedMultiGraph induced_subgraph(const WeightedMultiGraph& g,
                                           const std::vector<VertexId>& keep) {
  std::vector<char> kept(g.vertex_capacity(), 0);
  for (VertexId v : keep)
    if (g.has_vertex(v)) kept[v] = 1;
  WeightedMultiGraph out = g;
  for (VertexId v : g.vertices())
    if (!kept[v]) out.remove_vertex(v);
  return out;
}

// Keeps exactly the given edges and their endpoints (plus extra vertices).
inline WeightedMultiGraph edge_subgraph(const WeightedMultiGraph& g,
                                        const std::vector<EdgeId>& edges,
                                        const std::vector<VertexId>& extra = {}) {
  std::vector<char> keep_e(g.edge_capacity(), 0), keep_v(g.vertex_capacity(), 0);
  for (EdgeId e : edges) {
    if (!g.has_edge(e)) throw PreconditionError("edge_subgraph: missing edge");
    keep_e[e] = 1;
    keep_v[g.ends(e).u] = keep_v[g.ends(e).v] = 1;
  }
  for (VertexId v : extra) keep_v[v] = 1;
  WeightedMultiGraph out = g;
  for (EdgeId e : g.edges())
    if (!keep_e[e]) out.remove_edge(e);
  for (VertexId v : g.vertices())
    if (!keep_v[v]) out.remove_vertex(v);
  return out;
}

inline std::vector<std::vector<VertexId>> connected_components(const WeightedMultiGraph& g) {
  std::vector<std::vector<VertexId>> comps;
  std::vector<char> seen(g.vertex_capacity(), 0);
  for (VertexId s : g.vertices()) {
    if (seen[s]) continue;
    comps.emplace_back();
    std::vector<VertexId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comps.back().push_back(v);
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.other(e, v);
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

// ---------------------------------------------------------------------------
// Biconnected blocks (edge-stack DFS keyed on the parent *edge*, so two
// parallel edges form a 2-cycle block).

inline BlockDecomposition blocks(const WeightedMultiGraph& g) {
  BlockDecomposition out;
  const VertexId cap = g.vertex_capacity();
  std::vector<int> disc(cap, -1), low(cap, 0);
  std::vector<char> is_cut(cap, 0);
  std::vector<EdgeId> edge_stack;
  int timer = 0;

  struct Frame {
    VertexId v;
    EdgeId parent_edge;
    std::size_t next;
  };

  auto emit_block = [&](EdgeId until) {
    Block b;
    while (true) {
      EdgeId e = edge_stack.back();
      edge_stack.pop_back();
      b.edges.push_back(e);
      b.vertices.push_back(g.ends(e).u);
      b.vertices.push_back(g.ends(e).v);
      if (e == until) break;
    }
    std::sort(b.edges.begin(), b.edges.end());
    std::sort(b.vertices.begin(), b.vertices.end());
    b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()), b.vertices.end());
    b.is_cycle_or_edge = b.edges.size() <= b.vertices.size();
    out.blocks.push_back(std::move(b));
  };

  for (VertexId root : g.vertices()) {
    if (disc[root] != -1) continue;
    disc[root] = low[root] = timer++;
    if (g.incident(root).empty()) {
      out.blocks.push_back(Block{{root}, {}, true});
      continue;
    }
    int root_children = 0;
    std::vector<Frame> frames{{root, kNoEdge, 0}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      const VertexId v = f.v;
      const auto& inc = g.incident(v);
      if (f.next < inc.size()) {
        const EdgeId e = inc[f.next++];
        if (e == f.parent_edge) continue;
        const VertexId w = g.other(e, v);
        if (disc[w] == -1) {
          edge_stack.push_back(e);
          disc[w] = low[w] = timer++;
          if (v == root) ++root_children;
          frames.push_back({w, e, 0});
        } else if (disc[w] < disc[v]) {
          edge_stack.push_back(e);
          low[v] = std::min(low[v], disc[w]);
        }
        continue;
      }
      const EdgeId pe = f.parent_edge;
      frames.pop_back();
      if (frames.empty()) break;
      const VertexId p = frames.back().v;
      low[p] = std::min(low[p], low[v]);
      if (low[v] >= disc[p]) {
        if (p != root) is_cut[p] = 1;
        emit_block(pe);
      }
    }
    if (root_children >= 2) is_cut[root] = 1;
  }
  for (VertexId v = 0; v < cap; ++v)
    if (is_cut[v]) out.cutvertices.push_back(v);
  return out;
}

inline bool is_forest_of_cacti(const WeightedMultiGraph& g) {
  for (const auto& b : blocks(g).blocks)
    if (!b.is_cycle_or_edge) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Theta extraction

namespace detail {

// Tree path from v up to (and including) `stop` using parent pointers.
inline GraphPath climb(VertexId v, VertexId stop, const std::vector<VertexId>& parent,
                       const std::vector<EdgeId>& parent_edge) {
  GraphPath p;
  p.vertices.push_back(v);
  while (v != stop) {
    p.edges.push_back(parent_edge[v]);
    v = parent[v];
    p.vertices.push_back(v);
  }
  return p;
}

// Concatenates a (ending at x) with b (starting at x).
inline GraphPath join(GraphPath a, const GraphPath& b) {
  a.vertices.insert(a.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
  a.edges.insert(a.edges.end(), b.edges.begin(), b.edges.end());
  return a;
}

// Splits a closed walk (cycle vertices c0..c_{k-1}, edge i joins c_i and
// c_{i+1}) into the two arcs between positions i < j, both oriented c_i -> c_j.
inline std::pair<GraphPath, GraphPath> split_cycle(const std::vector<VertexId>& cyc,
                                                   const std::vector<EdgeId>& cyc_edges,
                                                   std::size_t i, std::size_t j) {
  const std::size_t k = cyc.size();
  GraphPath forward, backward;
  for (std::size_t t = i; t <= j; ++t) forward.vertices.push_back(cyc[t]);
  for (std::size_t t = i; t < j; ++t) forward.edges.push_back(cyc_edges[t]);
  for (std::size_t t = i;; t = (t + k - 1) % k) {
    backward.vertices.push_back(cyc[t]);
    if (t == j) break;
    backward.edges.push_back(cyc_edges[(t + k - 1) % k]);
  }
  return {forward, backward};
}

// Theta made of a cycle and an ear joining two distinct cycle vertices;
// pos[v] is the index of v on the cycle or -1.
inline Diamond theta_from_cycle_and_ear(const std::vector<VertexId>& cyc,
                                        const std::vector<EdgeId>& cyc_edges,
                                        const std::vector<int>& pos, const GraphPath& ear) {
  const VertexId a = ear.front(), b = ear.back();
  const auto pi = static_cast<std::size_t>(pos[a]), pj = static_cast<std::size_t>(pos[b]);
  Diamond d;
  if (pi < pj) {
    auto [p1, p2] = split_cycle(cyc, cyc_edges, pi, pj);
    d.a = a;
    d.b = b;
    d.paths = {p1, p2, ear};
  } else {
    auto [p1, p2] = split_cycle(cyc, cyc_edges, pj, pi);
    d.a = b;
    d.b = a;
    d.paths = {p1, p2, ear.reversed()};
  }
  return d;
}

// Ear construction inside a 2-connected block with more edges than vertices.
inline Diamond diamond_in_block(const WeightedMultiGraph& g, const Block& block) {
  const WeightedMultiGraph sub = edge_subgraph(g, block.edges);
  const VertexId cap = sub.vertex_capacity();
  // BFS tree from the smallest vertex; the first non-tree edge closes a cycle.
  const VertexId root = block.vertices.front();
  std::vector<VertexId> parent(cap, kNoVertex);
  std::vector<EdgeId> parent_edge(cap, kNoEdge);
  std::vector<int> depth(cap, -1);
  std::vector<VertexId> order{root};
  depth[root] = 0;
  for (std::size_t h = 0; h < order.size(); ++h) {
    VertexId v = order[h];
    for (EdgeId e : sub.incident(v)) {
      VertexId w = sub.other(e, v);
      if (depth[w] == -1) {
        depth[w] = depth[v] + 1;
        parent[w] = v;
        parent_edge[w] = e;
        order.push_back(w);
      }
    }
  }
  EdgeId closing = kNoEdge;
  for (EdgeId e : sub.edges()) {
    const auto [x, y] = sub.ends(e);
    if (parent_edge[x] != e && parent_edge[y] != e) {
      closing = e;
      break;
    }
  }
  DHS_ENSURE(closing != kNoEdge, "block with surplus edges has no cycle");
  VertexId x = sub.ends(closing).u, y = sub.ends(closing).v;
  VertexId lx = x, ly = y;
  while (lx != ly) {
    if (depth[lx] >= depth[ly]) lx = parent[lx];
    else ly = parent[ly];
  }
  // Cycle: x -> ... -> lca -> ... -> y -> (closing) -> x.
  GraphPath up = climb(x, lx, parent, parent_edge);
  GraphPath down = climb(y, lx, parent, parent_edge).reversed();
  GraphPath arc = join(up, down);
  std::vector<VertexId> cyc(arc.vertices);
  std::vector<EdgeId> cyc_edges(arc.edges);
  cyc_edges.push_back(closing);
  std::vector<int> pos(cap, -1);
  std::vector<char> on_cycle_edge(sub.edge_capacity(), 0);
  for (std::size_t i = 0; i < cyc.size(); ++i) pos[cyc[i]] = static_cast<int>(i);
  for (EdgeId e : cyc_edges) on_cycle_edge[e] = 1;

  // An ear: an edge off the cycle leaving cycle vertex a, continued through
  // non-cycle vertices until it first returns to the cycle at b != a.
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    const VertexId a = cyc[i];
    for (EdgeId e : sub.incident(a)) {
      if (on_cycle_edge[e]) continue;
      const VertexId first = sub.other(e, a);
      GraphPath ear;
      if (pos[first] != -1) {
        ear.vertices = {a, first};
        ear.edges = {e};
      } else {
        std::vector<VertexId> prev(cap, kNoVertex);
        std::vector<EdgeId> prev_edge(cap, kNoEdge);
        std::vector<char> seen(cap, 0);
        std::vector<VertexId> queue{first};
        seen[first] = 1;
        seen[a] = 1;
        VertexId hit = kNoVertex, from = kNoVertex;
        EdgeId hit_edge = kNoEdge;
        for (std::size_t h = 0; h < queue.size() && hit == kNoVertex; ++h) {
          VertexId v = queue[h];
          for (EdgeId f : sub.incident(v)) {
            VertexId w = sub.other(f, v);
            if (w == a) continue;
            if (pos[w] != -1) {
              hit = w;
              from = v;
              hit_edge = f;
              break;
            }
            if (!seen[w]) {
              seen[w] = 1;
              prev[w] = v;
              prev_edge[w] = f;
              queue.push_back(w);
            }
          }
        }
        if (hit == kNoVertex) continue;
        std::vector<VertexId> rev{hit, from};
        std::vector<EdgeId> rev_e{hit_edge};
        for (VertexId v = from; v != first; v = prev[v]) {
          rev_e.push_back(prev_edge[v]);
          rev.push_back(prev[v]);
        }
        rev.push_back(a);
        rev_e.push_back(e);
        ear.vertices.assign(rev.rbegin(), rev.rend());
        ear.edges.assign(rev_e.rbegin(), rev_e.rend());
      }
      return theta_from_cycle_and_ear(cyc, cyc_edges, pos, ear);
    }
  }
  throw InternalError("no ear found in a block with surplus edges");
}

}  // namespace detail

inline std::optional<Diamond> find_any_diamond(const WeightedMultiGraph& g) {
  for (const auto& b : blocks(g).blocks)
    if (!b.is_cycle_or_edge) return detail::diamond_in_block(g, b);
  return std::nullopt;
}

// Re-checks the three-internally-disjoint-paths structure against `g`.
inline bool is_valid_diamond(const WeightedMultiGraph& g, const Diamond& d) {
  if (d.a == d.b || !g.has_vertex(d.a) || !g.has_vertex(d.b)) return false;
  std::set<VertexId> internal_seen;
  std::set<EdgeId> edges_seen;
  for (const auto& p : d.paths) {
    if (p.vertices.size() < 2 || p.edges.size() + 1 != p.vertices.size()) return false;
    if (p.front() != d.a || p.back() != d.b) return false;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
      const EdgeId e = p.edges[i];
      if (!g.has_edge(e)) return false;
      const auto [x, y] = g.ends(e);
      if (std::minmax(x, y) != std::minmax(p.vertices[i], p.vertices[i + 1])) return false;
      if (!edges_seen.insert(e).second) return false;
    }
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
      const VertexId v = p.vertices[i];
      if (v == d.a || v == d.b || !g.has_vertex(v)) return false;
      if (!internal_seen.insert(v).second) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Short cycles

// Edge-level cycles (parallel edges distinguished) with 2 <= length <= max_len.
struct Cycle {
  std::vector<VertexId> vertices;  // c0..c_{k-1}
  std::vector<EdgeId> edges;       // edge i joins c_i and c_{i+1 mod k}
  std::size_t length() const { return edges.size(); }
};

inline std::vector<Cycle> enumerate_cycles(const WeightedMultiGraph& g, std::size_t max_len) {
  std::vector<Cycle> out;
  // Length 2: pairs of parallel edges.
  if (max_len >= 2) {
    for (VertexId u : g.vertices())
      for (VertexId v : g.neighbors(u)) {
        if (v <= u) continue;
        const auto par = g.edges_between(u, v);
        for (std::size_t i = 0; i < par.size(); ++i)
          for (std::size_t j = i + 1; j < par.size(); ++j)
            out.push_back({{u, v}, {par[i], par[j]}});
      }
  }
  if (max_len < 3) return out;
  // Length >= 3: start at the smallest vertex, second vertex smaller than the
  // last one so each vertex cycle is produced once, then expand edge choices.
  std::vector<char> on_path(g.vertex_capacity(), 0);
  std::vector<VertexId> path;
  std::vector<EdgeId> path_edges;
  std::function<void(VertexId)> extend;
  VertexId start = kNoVertex;
  extend = [&](VertexId v) {
    for (EdgeId e : g.incident(v)) {
      const VertexId w = g.other(e, v);
      if (w == start && path.size() >= 3 && path[1] < path.back()) {
        Cycle c{path, path_edges};
        c.edges.push_back(e);
        out.push_back(std::move(c));
        continue;
      }
      if (w <= start || on_path[w] || path.size() >= max_len) continue;
      // Parallel edges toward an already visited predecessor would repeat a pair.
      on_path[w] = 1;
      path.push_back(w);
      path_edges.push_back(e);
      extend(w);
      path.pop_back();
      path_edges.pop_back();
      on_path[w] = 0;
    }
  };
  for (VertexId s : g.vertices()) {
    start = s;
    on_path[s] = 1;
    path = {s};
    path_edges.clear();
    extend(s);
    on_path[s] = 0;
  }
  return out;
}

struct ShortCycleCounts {
  std::int64_t total = 0;
  std::vector<std::int64_t> per_vertex;  // indexed by VertexId
};

// Counts cycles of exactly `len` edges: C(m,2) per pair for len 2, and for
// len >= 3 vertex cycles weighted by the product of their edge multiplicities.
inline ShortCycleCounts count_short_cycles(const WeightedMultiGraph& g, int len) {
  if (len < 2 || len > 5) throw PreconditionError("cycle length must be in 2..5");
  ShortCycleCounts out;
  out.per_vertex.assign(g.vertex_capacity(), 0);
  if (len == 2) {
    for (VertexId u : g.vertices())
      for (VertexId v : g.neighbors(u)) {
        if (v <= u) continue;
        const std::int64_t m = g.multiplicity(u, v);
        const std::int64_t c = m * (m - 1) / 2;
        out.total += c;
        out.per_vertex[u] += c;
        out.per_vertex[v] += c;
      }
    return out;
  }
  std::vector<std::vector<VertexId>> nbr(g.vertex_capacity());
  for (VertexId v : g.vertices()) nbr[v] = g.neighbors(v);
  std::vector<VertexId> path;
  std::vector<char> on_path(g.vertex_capacity(), 0);
  std::function<void(VertexId)> extend = [&](VertexId v) {
    const VertexId start = path.front();
    if (static_cast<int>(path.size()) == len) {
      if (path[1] < path.back() &&
          std::binary_search(nbr[v].begin(), nbr[v].end(), start)) {
        std::int64_t weight = g.multiplicity(v, start);
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
          weight *= g.multiplicity(path[i], path[i + 1]);
        out.total += weight;
        for (VertexId x : path) out.per_vertex[x] += weight;
      }
      return;
    }
    for (VertexId w : nbr[v]) {
      if (w <= start || on_path[w]) continue;
      on_path[w] = 1;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  for (VertexId s : g.vertices()) {
    path = {s};
    on_path[s] = 1;
    extend(s);
    on_path[s] = 0;
  }
  return out;
}

}  // namespace dhs
