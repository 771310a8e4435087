#pragma once

// Rows of the working LP: diamond and blended diamond rows, the basic and
// extended sparsity rows, loads, and the forest-of-cacti edge bound.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dhs/core.hpp"
#include "dhs/multigraph.hpp"
#include "dhs/reduce.hpp"
#include "dhs/support.hpp"

namespace dhs {

inline Rational lambda(int i, int q = kShortCycleLength) {
  if (i < 2 || i > q) throw PreconditionError("lambda: index out of range");
  return make_rational(q - i + 1, static_cast<long>(i / 2) * q);
}

// Number of i-cycles (2 <= i <= q) of g.
inline std::vector<std::int64_t> short_cycle_totals(const WeightedMultiGraph& g, int q) {
  std::vector<std::int64_t> gamma(q + 1, 0);
  for (const auto& c : enumerate_cycles(g, static_cast<std::size_t>(q))) ++gamma[c.length()];
  return gamma;
}

// Loads deg(v) - sum_i lambda_i * gamma_i(g, v), indexed by vertex id.
inline std::vector<Rational> loads(const WeightedMultiGraph& g, int q = kShortCycleLength) {
  std::vector<Rational> out(g.vertex_capacity());
  for (VertexId v : g.vertices()) out[v] = g.degree(v);
  for (const auto& c : enumerate_cycles(g, static_cast<std::size_t>(q))) {
    const Rational l = lambda(static_cast<int>(c.length()), q);
    for (VertexId v : c.vertices) out[v] -= l;
  }
  return out;
}

inline Rational load(const WeightedMultiGraph& g, VertexId v, int q = kShortCycleLength) {
  if (!g.has_vertex(v)) throw PreconditionError("load: unknown vertex");
  return loads(g, q)[v];
}

inline Rational cactus_edge_bound(const WeightedMultiGraph& f, int q = kShortCycleLength) {
  if (q < 2) throw PreconditionError("cactus_edge_bound: q below 2");
  if (!is_forest_of_cacti(f)) throw PreconditionError("cactus_edge_bound: not a forest of cacti");
  const auto k = static_cast<long>(connected_components(f).size());
  Rational bound = make_rational(q + 1, q) * Rational(static_cast<long>(f.num_vertices()) - k);
  const auto gamma = short_cycle_totals(f, q);
  for (int i = 2; i <= q; ++i) bound += make_rational(q - i + 1, q) * Rational(static_cast<long>(gamma[i]));
  return bound;
}

// ---------------------------------------------------------------------------
// Rows

enum class RowKind { Diamond, BlendedDiamond, Sparsity, ExtendedSparsity };

inline const char* to_string(RowKind k) {
  switch (k) {
    case RowKind::Diamond: return "diamond";
    case RowKind::BlendedDiamond: return "blended";
    case RowKind::Sparsity: return "sparsity";
    case RowKind::ExtendedSparsity: return "extended";
  }
  return "?";
}

// Top/bottom labelling of one cycle of a double piece. An absent residual
// minimum stands for +infinity (trivial handle).
struct HandleState {
  PieceCycle cycle;
  int top = 0;
  std::optional<Rational> trc;
  std::optional<Rational> brc;
  bool special = false;
  Rational rate_top = 0;
  Rational rate_bottom = 0;

  const GraphPath& top_handle() const { return cycle.handles[top]; }
  const GraphPath& bottom_handle() const { return cycle.handles[1 - top]; }
  bool equalized() const { return trc && brc && *trc == *brc; }
};

struct WorkingRow {
  std::map<VertexId, Rational> coeff;  // zero entries omitted
  Rational rhs = 1;
  RowKind kind = RowKind::Diamond;
  std::optional<SupportGraph> support;  // blended rows
  std::vector<HandleState> handles;     // blended and extended rows

  Rational at(VertexId v) const {
    const auto it = coeff.find(v);
    return it == coeff.end() ? Rational(0) : it->second;
  }
  Rational lhs(const std::vector<VertexId>& x) const {
    Rational s = 0;
    for (VertexId v : x) s += at(v);
    return s;
  }
};

inline WorkingRow build_diamond_row(const Diamond& d) {
  WorkingRow row;
  for (VertexId v : d.vertex_set()) row.coeff[v] = 1;
  return row;
}

namespace detail {

inline std::optional<Rational> min_residual(const GraphPath& p, const std::vector<Rational>& residual) {
  std::optional<Rational> m;
  for (VertexId v : p.internal())
    if (!m || residual.at(v) < *m) m = residual.at(v);
  return m;
}

inline std::vector<EdgeId> sorted_edges(const GraphPath& p) {
  auto e = p.edges;
  std::sort(e.begin(), e.end());
  return e;
}

inline VertexId min_internal(const PieceCycle& c) {
  const auto in = c.internal();
  return in.empty() ? kNoVertex : in.front();
}

// Finite-or-infinite comparison, absent meaning +infinity.
inline bool less_inf(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

}  // namespace detail

// Labels the handles of c: the smaller minimum residual is on top; ties go to
// a stored triple's labelling, else to the handle with the smallest internal
// vertex. A single nontrivial handle is the top; for two trivial handles the
// lower edge id is.
inline HandleState label_cycle(const PieceCycle& c, const std::vector<Rational>& residual,
                               const std::vector<Triple>& list) {
  HandleState hs;
  hs.cycle = c;
  const auto m0 = detail::min_residual(c.handles[0], residual);
  const auto m1 = detail::min_residual(c.handles[1], residual);
  const auto e0 = detail::sorted_edges(c.handles[0]);
  const auto e1 = detail::sorted_edges(c.handles[1]);
  const Triple* stored = nullptr;
  for (const auto& t : list) {
    const auto te = detail::sorted_edges(t.top), be = detail::sorted_edges(t.bottom);
    if ((te == e0 && be == e1) || (te == e1 && be == e0)) {
      stored = &t;
      break;
    }
  }
  const int stored_top = stored ? (detail::sorted_edges(stored->top) == e0 ? 0 : 1) : -1;
  if (!m0 && !m1) {
    hs.top = c.handles[0].edges.front() < c.handles[1].edges.front() ? 0 : 1;
  } else if (detail::less_inf(m0, m1)) {
    hs.top = 0;
  } else if (detail::less_inf(m1, m0)) {
    hs.top = 1;
  } else if (stored_top >= 0) {
    hs.top = stored_top;
  } else {
    const auto i0 = c.handles[0].internal(), i1 = c.handles[1].internal();
    hs.top = *std::min_element(i0.begin(), i0.end()) < *std::min_element(i1.begin(), i1.end()) ? 0 : 1;
  }
  if (stored_top >= 0 && stored_top != hs.top)
    throw InternalError("violated labeling: a stored top handle has a larger residual than its bottom");
  hs.trc = hs.top == 0 ? m0 : m1;
  hs.brc = hs.top == 0 ? m1 : m0;
  return hs;
}

namespace detail {

// Index of the special cycle among `states`: equalized cycles first, then
// any cycle with internal vertices, by smallest internal vertex.
inline std::size_t choose_special(const std::vector<HandleState>& states) {
  auto key = [](const HandleState& h) {
    const VertexId m = min_internal(h.cycle);
    const int tier = h.equalized() ? 0 : (m != kNoVertex ? 1 : 2);
    return std::pair<int, VertexId>(tier, m);
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < states.size(); ++i)
    if (key(states[i]) < key(states[best])) best = i;
  return best;
}

// Handle coefficients for a labelled cycle given the bottom weight used when
// trc < brc (1 in blended rows, 2 in extended rows).
inline void assign_handles(WorkingRow& row, HandleState& hs, const Rational& heavy) {
  auto set = [&](const GraphPath& p, const Rational& a) {
    for (VertexId v : p.internal()) {
      if (a == 0) row.coeff.erase(v);
      else row.coeff[v] = a;
    }
  };
  if (hs.special) {
    hs.rate_top = hs.rate_bottom = 1;
  } else if (hs.equalized()) {
    hs.rate_top = hs.rate_bottom = heavy / 2;
  } else {
    hs.rate_top = 0;
    hs.rate_bottom = heavy;
  }
  set(hs.top_handle(), hs.rate_top);
  set(hs.bottom_handle(), hs.rate_bottom);
}

}  // namespace detail

inline WorkingRow build_blended_row(const SupportGraph& s, const std::vector<Rational>& residual,
                                    const std::vector<Triple>& list) {
  if (!is_consistent(s, list)) throw PreconditionError("build_blended_row: support inconsistent with L");
  WorkingRow row;
  row.kind = RowKind::BlendedDiamond;
  row.support = s;
  for (VertexId v : s.sub.vertices) row.coeff[v] = 1;
  if (s.type != SupportType::Necklace) return row;
  for (const auto& p : s.pieces)
    for (const auto& c : p.cycles) row.handles.push_back(label_cycle(c, residual, list));
  DHS_ENSURE(!row.handles.empty(), "necklace without a cycle");
  row.handles[detail::choose_special(row.handles)].special = true;
  for (auto& hs : row.handles) detail::assign_handles(row, hs, 1);
  return row;
}

// Smallest theta in the union of two short cycles sharing an edge, or three
// parallel edges; none means no two cycles of length at most q share an edge.
inline std::optional<Diamond> short_cycle_conflict(const WeightedMultiGraph& g, int q = kShortCycleLength) {
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
  const auto cycles = enumerate_cycles(g, static_cast<std::size_t>(q));
  std::map<EdgeId, std::vector<std::size_t>> on_edge;
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (EdgeId e : cycles[i].edges) on_edge[e].push_back(i);
  std::optional<Diamond> best;
  std::set<std::pair<std::size_t, std::size_t>> done;
  for (const auto& [e, list] : on_edge)
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        if (!done.emplace(list[a], list[b]).second) continue;
        for (int order = 0; order < 2; ++order) {
          const auto& c1 = cycles[order == 0 ? list[a] : list[b]];
          const auto& c2 = cycles[order == 0 ? list[b] : list[a]];
          auto d = detail::theta_from_cycle_pair(g, c1.vertices, c1.edges, c2.vertices, c2.edges);
          if (d && (!best || d->size() < best->size())) best = d;
        }
      }
  if (best) DHS_ENSURE(best->size() <= static_cast<std::size_t>(2 * q - 1), "conflict theta too large");
  return best;
}

inline WorkingRow build_sparsity_row_basic(const WeightedMultiGraph& g, int q = kShortCycleLength) {
  if (short_cycle_conflict(g, q)) throw PreconditionError("build_sparsity_row_basic: short cycles share an edge");
  const Rational c = make_rational(q + 1, q);
  WorkingRow row;
  row.kind = RowKind::Sparsity;
  const auto l = loads(g, q);
  for (VertexId v : g.vertices())
    if (l[v] - c != 0) row.coeff[v] = l[v] - c;
  row.rhs = Rational(static_cast<long>(g.num_edges())) - c * Rational(static_cast<long>(g.num_vertices())) + c;
  const auto gamma = short_cycle_totals(g, q);
  for (int i = 2; i <= q; ++i) row.rhs -= make_rational(q - i + 1, q) * Rational(static_cast<long>(gamma[i]));
  return row;
}

// Pieces of the shaved graph, one per adjacent pair of the reduced graph.
inline std::vector<Piece> pieces_of(const ReducedGraph& r) {
  std::vector<Piece> out;
  const auto& g = r.graph;
  for (VertexId u : g.vertices())
    for (VertexId v : g.neighbors(u)) {
      if (v <= u) continue;
      const auto par = g.edges_between(u, v);
      if (par.size() >= 3) throw PreconditionError("pieces_of: three parallel reduced edges");
      out.push_back(detail::piece_between(r, u, v, par));
    }
  return out;
}

inline WorkingRow build_extended_sparsity_row(const ReducedGraph& r, const std::vector<Rational>& residual,
                                              const std::vector<Triple>& list) {
  const int q = kShortCycleLength;
  const auto& ht = r.graph;
  if (short_cycle_conflict(ht, q)) throw PreconditionError("build_extended_sparsity_row: short cycles share an edge");
  const Rational c = make_rational(q + 1, q);
  WorkingRow row;
  row.kind = RowKind::ExtendedSparsity;
  const auto l = loads(ht, q);
  for (VertexId v : ht.vertices()) {
    const Rational a = l[v] - c;
    DHS_ENSURE(a > 0, "extended sparsity row has a non-positive branch coefficient");
    row.coeff[v] = a;
  }
  for (const auto& p : pieces_of(r)) {
    if (!p.is_double) {
      for (VertexId v : p.internal()) row.coeff[v] = 1;
      continue;
    }
    for (VertexId v : p.internal()) row.coeff[v] = 2;
    std::vector<HandleState> states;
    for (const auto& cyc : p.cycles) states.push_back(label_cycle(cyc, residual, list));
    states[detail::choose_special(states)].special = true;
    for (auto& hs : states) {
      detail::assign_handles(row, hs, 2);
      row.handles.push_back(hs);
    }
  }
  row.rhs = Rational(static_cast<long>(ht.num_edges())) - c * Rational(static_cast<long>(ht.num_vertices())) + c;
  const auto gamma = short_cycle_totals(ht, q);
  for (int i = 2; i <= q; ++i) row.rhs -= make_rational(q - i + 1, q) * Rational(static_cast<long>(gamma[i]));
  DHS_ENSURE(row.rhs > 0, "extended sparsity row has a non-positive right-hand side");
  return row;
}

}  // namespace dhs
