#pragma once

// Greedy, O(log n) and 9-approximation primal-dual solvers, their
// certificates, and an independent certificate checker.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dhs/core.hpp"
#include "dhs/inequalities.hpp"
#include "dhs/multigraph.hpp"
#include "dhs/oracle.hpp"
#include "dhs/reduce.hpp"
#include "dhs/support.hpp"

namespace dhs {

enum class Algorithm { Greedy, LogN, Nine, Exact };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Greedy: return "greedy";
    case Algorithm::LogN: return "logn";
    case Algorithm::Nine: return "nine";
    case Algorithm::Exact: return "exact";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(const std::string& s) {
  for (Algorithm a : {Algorithm::Greedy, Algorithm::LogN, Algorithm::Nine, Algorithm::Exact})
    if (s == to_string(a)) return a;
  return std::nullopt;
}

struct SolveStats {
  std::size_t iterations = 0;
  std::size_t collisions = 0;
  std::size_t extended_rows = 0;
  std::size_t blended_rows = 0;
  std::size_t triples_created = 0;
  std::size_t triples_dropped = 0;
};

struct Certificate {
  Algorithm algorithm = Algorithm::LogN;
  std::size_t n = 0;                 // vertices of the input graph
  std::vector<VertexId> hitting_set;  // in insertion order
  std::vector<WorkingRow> rows;
  std::vector<Rational> y;
  Rational primal = 0;
  Rational dual = 0;
  std::vector<Rational> row_ratios;
  double ratio_bound = 0;
  std::vector<Diamond> diamonds;  // greedy only
  bool rows_included = true;      // false when rows were not serialized
  SolveStats stats;

  Rational max_row_ratio() const {
    Rational m = 0;
    for (const auto& r : row_ratios) m = std::max(m, r);
    return m;
  }
};

inline Rational cost_of(const WeightedMultiGraph& g, const std::vector<VertexId>& x) {
  Rational c = 0;
  for (VertexId v : x) c += g.cost(v);
  return c;
}

// ---------------------------------------------------------------------------
// Dual raising

struct RaiseResult {
  Rational delta;
  std::vector<VertexId> tight;          // ascending
  std::vector<std::size_t> collisions;  // indices into row.handles
};

inline RaiseResult max_raise(const WorkingRow& row, const std::vector<Rational>& residual) {
  std::optional<Rational> delta;
  for (const auto& [v, a] : row.coeff) {
    if (a < 0) throw PreconditionError("max_raise: negative coefficient");
    if (a == 0) continue;
    if (residual.at(v) < 0) throw PreconditionError("max_raise: negative residual");
    const Rational d = residual.at(v) / a;
    if (!delta || d < *delta) delta = d;
  }
  if (!delta) throw InternalError("max_raise: row has no positive coefficient");
  std::vector<Rational> collide(row.handles.size());
  std::vector<char> can_collide(row.handles.size(), 0);
  for (std::size_t i = 0; i < row.handles.size(); ++i) {
    const auto& hs = row.handles[i];
    if (hs.special || !hs.trc || !hs.brc || *hs.trc >= *hs.brc) continue;
    if (hs.rate_bottom <= hs.rate_top) continue;
    collide[i] = (*hs.brc - *hs.trc) / (hs.rate_bottom - hs.rate_top);
    can_collide[i] = 1;
    if (collide[i] < *delta) delta = collide[i];
  }
  RaiseResult out;
  out.delta = *delta;
  for (const auto& [v, a] : row.coeff)
    if (a > 0 && residual.at(v) - a * out.delta == 0) out.tight.push_back(v);
  for (std::size_t i = 0; i < row.handles.size(); ++i)
    if (can_collide[i] && collide[i] == out.delta) out.collisions.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Insertion order and reverse delete

// Vertices on no listed handle first, then the handle interiors of each triple
// (top, then bottom), with triples hit on both handles ahead of the others.
inline std::vector<VertexId> insertion_order(std::vector<VertexId> tight, const std::vector<Triple>& list) {
  std::sort(tight.begin(), tight.end());
  tight.erase(std::unique(tight.begin(), tight.end()), tight.end());
  auto is_tight = [&](VertexId v) { return std::binary_search(tight.begin(), tight.end(), v); };
  std::set<VertexId> listed;
  for (const auto& t : list) {
    for (VertexId v : t.top.internal()) listed.insert(v);
    for (VertexId v : t.bottom.internal()) listed.insert(v);
  }
  std::vector<VertexId> out;
  for (VertexId v : tight)
    if (!listed.count(v)) out.push_back(v);
  std::vector<const Triple*> order;
  for (const auto& t : list) order.push_back(&t);
  auto hits = [&](const GraphPath& p) {
    for (VertexId v : p.internal())
      if (is_tight(v)) return true;
    return false;
  };
  std::stable_sort(order.begin(), order.end(), [&](const Triple* a, const Triple* b) {
    const bool ba = hits(a->top) && hits(a->bottom), bb = hits(b->top) && hits(b->bottom);
    if (ba != bb) return ba;
    return a->creation_index < b->creation_index;
  });
  std::set<VertexId> emitted(out.begin(), out.end());
  for (const Triple* t : order)
    for (const GraphPath* p : {&t->top, &t->bottom}) {
      auto in = p->internal();
      std::sort(in.begin(), in.end());
      for (VertexId v : in)
        if (is_tight(v) && emitted.insert(v).second) out.push_back(v);
    }
  return out;
}

inline std::vector<VertexId> reverse_delete(const WeightedMultiGraph& g, std::vector<VertexId> x) {
  if (!is_hitting_set(g, x)) throw PreconditionError("reverse_delete: not a hitting set");
  for (std::size_t i = x.size(); i-- > 0;) {
    auto without = x;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    if (is_hitting_set(g, without)) x = std::move(without);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Algorithms

namespace detail {

inline void finish_certificate(const WeightedMultiGraph& g, Certificate& c) {
  c.primal = cost_of(g, c.hitting_set);
  c.dual = 0;
  c.row_ratios.clear();
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    c.dual += c.rows[i].rhs * c.y[i];
    c.row_ratios.push_back(c.rows[i].lhs(c.hitting_set) / c.rows[i].rhs);
  }
}

inline bool same_handles(const Triple& a, const Triple& b) {
  const auto at = sorted_edges(a.top), ab = sorted_edges(a.bottom);
  const auto bt = sorted_edges(b.top), bb = sorted_edges(b.bottom);
  return (at == bt && ab == bb) || (at == bb && ab == bt);
}

}  // namespace detail

inline Certificate greedy_unweighted(const WeightedMultiGraph& g) {
  Certificate c;
  c.algorithm = Algorithm::Greedy;
  c.n = g.num_vertices();
  c.ratio_bound = small_diamond_bound(g.num_vertices());
  std::vector<char> used(g.vertex_capacity(), 0);
  while (!is_hitting_set(g, c.hitting_set)) {
    ++c.stats.iterations;
    const auto h = shave(delete_vertices(g, c.hitting_set));
    const auto r = reduce(h);
    const auto d = find_log_diamond_reduced(r);
    DHS_ENSURE(rational_le_real(Rational(static_cast<long>(d.size())), small_diamond_bound(r.graph.num_vertices())),
               "greedy diamond exceeds the logarithmic bound");
    const auto prim = primitive_subgraph(r, d.edge_set());
    const auto lifted = find_any_diamond(edge_subgraph(h, prim.edges));
    DHS_ENSURE(lifted.has_value(), "a reduced diamond does not lift");
    for (VertexId v : lifted->vertex_set()) {
      DHS_ENSURE(!used[v], "greedy diamonds overlap");
      used[v] = 1;
    }
    c.diamonds.push_back(*lifted);
    for (VertexId v : d.vertex_set()) c.hitting_set.push_back(v);
  }
  c.primal = Rational(static_cast<long>(c.hitting_set.size()));
  c.dual = Rational(static_cast<long>(c.diamonds.size()));
  DHS_ENSURE(rational_le_real(c.primal, c.ratio_bound * static_cast<double>(c.diamonds.size())),
             "greedy solution exceeds the packing bound");
  return c;
}

inline Certificate primal_dual_solve(const WeightedMultiGraph& g, Algorithm mode) {
  if (mode != Algorithm::LogN && mode != Algorithm::Nine)
    throw PreconditionError("primal_dual_solve: mode must be logn or nine");
  Certificate c;
  c.algorithm = mode;
  c.n = g.num_vertices();
  c.ratio_bound = mode == Algorithm::Nine ? kNineRowBound : logn_row_bound(g.num_vertices());
  std::vector<Rational> residual(g.vertex_capacity());
  for (VertexId v : g.vertices()) residual[v] = g.cost(v);
  std::vector<VertexId> x;
  std::vector<char> in_x(g.vertex_capacity(), 0);
  for (VertexId v : g.vertices())
    if (g.cost(v) == 0) {
      x.push_back(v);
      in_x[v] = 1;
    }
  std::vector<Triple> list;
  int next_index = 0;
  const std::size_t cycles = enumerate_cycles(g, 2).size();
  const std::size_t budget = 4 * (g.num_vertices() + 1) * (g.num_edges() + cycles + 1);

  while (!is_hitting_set(g, x)) {
    DHS_ENSURE(++c.stats.iterations <= budget, "iteration budget exceeded");
    const auto h = shave(delete_vertices(g, x));
    const auto r = reduce(h);
    // A handle vertex with two neighbours can still end up as a branch
    // vertex of the reduced graph; such triples no longer describe a cycle
    // inside one piece and are dropped.
    c.stats.triples_dropped += std::erase_if(list, [&](const Triple& t) {
      for (const GraphPath* p : {&t.top, &t.bottom})
        for (VertexId v : p->internal())
          if (r.is_branch(v)) return true;
      return false;
    });
    WorkingRow row;
    std::optional<Diamond> d;
    if (mode == Algorithm::Nine) d = find_diamond_within(r.graph, 9);
    else d = find_log_diamond_reduced(r);
    if (d) {
      const auto s = make_consistent(extract_support_graph(r, *d), list, r);
      if (mode == Algorithm::Nine)
        DHS_ENSURE(s.type == SupportType::ParallelPair || s.type == SupportType::CompleteFour ||
                       s.measure() <= static_cast<std::size_t>(kNineRowBound),
                   "support from a small diamond has too many pieces");
      row = build_blended_row(s, residual, list);
      ++c.stats.blended_rows;
    } else {
      DHS_ENSURE(!short_cycle_conflict(r.graph).has_value(),
                 "short cycles share an edge in a graph without small diamonds");
      row = build_extended_sparsity_row(r, residual, list);
      ++c.stats.extended_rows;
    }

    const auto raise = max_raise(row, residual);
    for (const auto& [v, a] : row.coeff) {
      residual[v] -= a * raise.delta;
      DHS_ENSURE(residual[v] >= 0, "dual infeasible after raising");
    }
    c.stats.collisions += raise.collisions.size();

    // Record the labels used by this row as triples.
    for (const auto& hs : row.handles) {
      if (hs.top_handle().trivial()) continue;
      Triple t{hs.top_handle(), hs.bottom_handle(), hs.cycle.end_a, hs.cycle.end_b, next_index};
      bool present = false;
      for (const auto& old : list) present = present || detail::same_handles(old, t);
      if (present) continue;
      for (const auto& old : list)
        for (const GraphPath* p : {&old.top, &old.bottom})
          for (VertexId v : p->internal())
            DHS_ENSURE(std::find(t.top.vertices.begin(), t.top.vertices.end(), v) == t.top.vertices.end() &&
                           std::find(t.bottom.vertices.begin(), t.bottom.vertices.end(), v) ==
                               t.bottom.vertices.end(),
                       "new triple overlaps a stored one");
      list.push_back(std::move(t));
      ++next_index;
      ++c.stats.triples_created;
    }

    for (VertexId v : insertion_order(raise.tight, list)) {
      DHS_ENSURE(!in_x[v], "a vertex became tight twice");
      in_x[v] = 1;
      x.push_back(v);
    }
    c.rows.push_back(std::move(row));
    c.y.push_back(raise.delta);

    // Drop triples that meet X or leave the shaved graph.
    const auto next_h = shave(delete_vertices(g, x));
    std::erase_if(list, [&](const Triple& t) {
      for (const GraphPath* p : {&t.top, &t.bottom})
        for (VertexId v : p->vertices)
          if (in_x[v] || !next_h.has_vertex(v)) return true;
      return false;
    });
    for (const auto& t : list) {
      const auto mt = detail::min_residual(t.top, residual);
      const auto mb = detail::min_residual(t.bottom, residual);
      DHS_ENSURE(!detail::less_inf(mb, mt), "a stored top handle fell behind its bottom");
    }
  }
  c.hitting_set = reverse_delete(g, x);
  detail::finish_certificate(g, c);
  return c;
}

inline Certificate exact_solve(const WeightedMultiGraph& g) {
  Certificate c;
  c.algorithm = Algorithm::Exact;
  c.n = g.num_vertices();
  c.ratio_bound = 1;
  c.hitting_set = exact_min_hitting_set(g).set;
  detail::finish_certificate(g, c);
  return c;
}

inline Certificate solve(const WeightedMultiGraph& g, Algorithm a) {
  switch (a) {
    case Algorithm::Greedy: return greedy_unweighted(g);
    case Algorithm::Exact: return exact_solve(g);
    default: return primal_dual_solve(g, a);
  }
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyCheck {
  std::string name;
  bool ok = true;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.ok) out.push_back(c.name);
    return out;
  }
  bool passed(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c.ok;
    return false;
  }
};

// Recomputes every claim of a certificate from the graph alone.
inline VerifyReport verify_certificate(const WeightedMultiGraph& g, const Certificate& c) {
  VerifyReport rep;
  auto add = [&](const std::string& name, bool ok) { rep.checks.push_back({name, ok}); };
  bool known = true;
  for (VertexId v : c.hitting_set) known = known && g.has_vertex(v);
  std::set<VertexId> distinct(c.hitting_set.begin(), c.hitting_set.end());
  known = known && distinct.size() == c.hitting_set.size();
  add("vertices", known);
  if (!known) return rep;
  add("hitting", is_hitting_set(g, c.hitting_set));

  if (c.algorithm == Algorithm::Greedy) {
    bool valid = true, disjoint = true;
    std::set<VertexId> seen;
    for (const auto& d : c.diamonds) {
      valid = valid && is_valid_diamond(g, d);
      for (VertexId v : d.vertex_set()) disjoint = disjoint && seen.insert(v).second;
    }
    add("diamonds", valid);
    add("disjoint", disjoint);
    add("primal_value", c.primal == Rational(static_cast<long>(c.hitting_set.size())));
    add("dual_value", c.dual == Rational(static_cast<long>(c.diamonds.size())));
    add("primal_bound", rational_le_real(c.primal, small_diamond_bound(g.num_vertices()) *
                                                       static_cast<double>(c.diamonds.size())));
    return rep;
  }

  bool minimal = true;
  for (std::size_t i = 0; i < c.hitting_set.size() && minimal; ++i) {
    auto without = c.hitting_set;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    minimal = !is_hitting_set(g, without);
  }
  add("minimal", minimal);
  const Rational primal = cost_of(g, c.hitting_set);
  add("primal_value", primal == c.primal);
  if (c.algorithm == Algorithm::Exact) return rep;
  if (!c.rows_included) return rep;

  bool shape = c.rows.size() == c.y.size();
  add("rows_shape", shape);
  if (!shape) return rep;
  std::vector<Rational> load(g.vertex_capacity(), 0);
  bool feasible = true;
  Rational dual = 0;
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    feasible = feasible && c.y[i] >= 0 && c.rows[i].rhs > 0;
    dual += c.rows[i].rhs * c.y[i];
    for (const auto& [v, a] : c.rows[i].coeff) {
      if (!g.has_vertex(v) || a < 0) {
        feasible = false;
        continue;
      }
      load[v] += a * c.y[i];
    }
  }
  for (VertexId v : g.vertices()) feasible = feasible && load[v] <= g.cost(v);
  add("dual_feasible", feasible);
  add("dual_value", dual == c.dual);
  bool tight = true;
  for (VertexId v : c.hitting_set) tight = tight && load[v] == g.cost(v);
  add("tight", tight);
  const double bound = c.algorithm == Algorithm::Nine ? kNineRowBound : logn_row_bound(g.num_vertices());
  auto within = [&](const Rational& lhs, const Rational& scale) {
    if (c.algorithm == Algorithm::Nine) return lhs <= Rational(kNineRowBound) * scale;
    return rational_le_real(lhs, bound * scale.get_d());
  };
  bool ratio = true;
  for (const auto& row : c.rows)
    if (row.rhs > 0) ratio = ratio && within(row.lhs(c.hitting_set), row.rhs);
  add("row_ratio", ratio);
  add("primal_bound", within(primal, dual));
  return rep;
}

}  // namespace dhs
