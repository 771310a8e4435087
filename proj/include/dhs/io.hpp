#pragma once

// Instance files (`p dhs n m`, `v id cost`, `e id u v`, `#` comments) and
// JSON certificates.

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dhs/core.hpp"
#include "dhs/multigraph.hpp"
#include "dhs/solver.hpp"

namespace dhs {

using Json = nlohmann::json;

inline void write_instance(std::ostream& out, const WeightedMultiGraph& g) {
  out << "p dhs " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (VertexId v : g.vertices()) out << "v " << v << ' ' << to_string(g.cost(v)) << '\n';
  for (EdgeId e : g.edges()) {
    const auto [u, v] = g.ends(e);
    out << "e " << e << ' ' << u << ' ' << v << '\n';
  }
}

inline std::string instance_to_string(const WeightedMultiGraph& g) {
  std::ostringstream out;
  write_instance(out, g);
  return out.str();
}

namespace detail {

inline long parse_id(const std::string& tok, int line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      tok.size() > 9)
    throw ParseError("line " + std::to_string(line) + ": bad id '" + tok + "'");
  return std::stol(tok);
}

}  // namespace detail

// Ids need not be contiguous; gaps become deleted slots so that ids survive.
inline WeightedMultiGraph read_instance(std::istream& in) {
  std::string text;
  long n = -1, m = -1;
  std::map<long, Rational> costs;
  std::map<long, std::pair<long, long>> edges;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const auto where = "line " + std::to_string(lineno) + ": ";
    if (tok[0] == "p") {
      if (n >= 0) throw ParseError(where + "second header");
      if (tok.size() != 4 || tok[1] != "dhs") throw ParseError(where + "expected 'p dhs <n> <m>'");
      n = detail::parse_id(tok[2], lineno);
      m = detail::parse_id(tok[3], lineno);
    } else if (n < 0) {
      throw ParseError(where + "missing header");
    } else if (tok[0] == "v") {
      if (tok.size() != 3) throw ParseError(where + "expected 'v <id> <cost>'");
      const long id = detail::parse_id(tok[1], lineno);
      Rational c;
      try {
        c = parse_rational(tok[2]);
      } catch (const ParseError& e) {
        throw ParseError(where + e.what());
      }
      if (c < 0) throw ParseError(where + "negative cost");
      if (!costs.emplace(id, c).second) throw ParseError(where + "duplicate vertex " + tok[1]);
    } else if (tok[0] == "e") {
      if (tok.size() != 4) throw ParseError(where + "expected 'e <id> <u> <v>'");
      const long id = detail::parse_id(tok[1], lineno);
      const long u = detail::parse_id(tok[2], lineno), v = detail::parse_id(tok[3], lineno);
      if (u == v) throw ParseError(where + "loop edge");
      if (!edges.emplace(id, std::pair{u, v}).second) throw ParseError(where + "duplicate edge " + tok[1]);
    } else {
      throw ParseError(where + "unknown record '" + tok[0] + "'");
    }
  }
  if (n < 0) throw ParseError("missing header");
  if (static_cast<long>(costs.size()) != n) throw ParseError("header promises " + std::to_string(n) + " vertices");
  if (static_cast<long>(edges.size()) != m) throw ParseError("header promises " + std::to_string(m) + " edges");
  WeightedMultiGraph g;
  const long cap = costs.empty() ? 0 : costs.rbegin()->first + 1;
  for (long v = 0; v < cap; ++v) g.add_vertex(costs.count(v) ? costs[v] : Rational(0));
  for (long v = 0; v < cap; ++v)
    if (!costs.count(v)) g.remove_vertex(static_cast<VertexId>(v));
  for (const auto& [id, uv] : edges) {
    if (!costs.count(uv.first) || !costs.count(uv.second))
      throw ParseError("edge " + std::to_string(id) + " has an unknown endpoint");
    g.add_edge_with_id(static_cast<EdgeId>(id), static_cast<VertexId>(uv.first),
                       static_cast<VertexId>(uv.second));
  }
  return g;
}

inline WeightedMultiGraph instance_from_string(const std::string& s) {
  std::istringstream in(s);
  return read_instance(in);
}

// ---------------------------------------------------------------------------
// Certificates

namespace detail {

inline Json path_json(const GraphPath& p) { return {{"vertices", p.vertices}, {"edges", p.edges}}; }

inline GraphPath path_from_json(const Json& j) {
  return {j.at("vertices").get<std::vector<VertexId>>(), j.at("edges").get<std::vector<EdgeId>>()};
}

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("rational must be a string");
  return parse_rational(j.get<std::string>());
}

inline RowKind parse_row_kind(const std::string& s) {
  for (RowKind k : {RowKind::Diamond, RowKind::BlendedDiamond, RowKind::Sparsity, RowKind::ExtendedSparsity})
    if (s == to_string(k)) return k;
  throw ParseError("unknown row kind '" + s + "'");
}

}  // namespace detail

inline Json certificate_to_json(const Certificate& c, const VerifyReport& report, bool with_rows = true,
                                std::uint64_t seed = 0) {
  Json j;
  j["algorithm"] = to_string(c.algorithm);
  j["n"] = c.n;
  j["seed"] = seed;
  j["hitting_set"] = c.hitting_set;
  j["primal_cost"] = to_string(c.primal);
  j["dual_objective"] = to_string(c.dual);
  j["ratio_bound"] = c.ratio_bound;
  j["rows_included"] = with_rows && c.rows_included;
  Json rows = Json::array();
  if (with_rows)
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
      Json coeff = Json::array();
      for (const auto& [v, a] : c.rows[i].coeff) coeff.push_back({v, to_string(a)});
      rows.push_back({{"kind", to_string(c.rows[i].kind)},
                      {"coeff", coeff},
                      {"beta", to_string(c.rows[i].rhs)},
                      {"y", to_string(c.y[i])},
                      {"ratio", to_string(c.row_ratios.at(i))}});
    }
  j["rows"] = rows;
  Json diamonds = Json::array();
  for (const auto& d : c.diamonds) {
    Json paths = Json::array();
    for (const auto& p : d.paths) paths.push_back(detail::path_json(p));
    diamonds.push_back({{"a", d.a}, {"b", d.b}, {"paths", paths}});
  }
  j["diamonds"] = diamonds;
  Json checks = Json::object();
  for (const auto& ch : report.checks) checks[ch.name] = ch.ok;
  j["checks"] = checks;
  j["stats"] = {{"iterations", c.stats.iterations},
                {"collisions", c.stats.collisions},
                {"blended_rows", c.stats.blended_rows},
                {"extended_rows", c.stats.extended_rows},
                {"triples_created", c.stats.triples_created},
                {"triples_dropped", c.stats.triples_dropped}};
  return j;
}

// Reads back everything the checker needs; recorded checks are ignored.
inline Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    const auto alg = parse_algorithm(j.at("algorithm").get<std::string>());
    if (!alg) throw ParseError("unknown algorithm");
    c.algorithm = *alg;
    c.n = j.at("n").get<std::size_t>();
    c.hitting_set = j.at("hitting_set").get<std::vector<VertexId>>();
    c.primal = detail::rational_from_json(j.at("primal_cost"));
    c.dual = detail::rational_from_json(j.at("dual_objective"));
    c.ratio_bound = j.at("ratio_bound").get<double>();
    c.rows_included = j.at("rows_included").get<bool>();
    for (const auto& r : j.at("rows")) {
      WorkingRow row;
      row.kind = detail::parse_row_kind(r.at("kind").get<std::string>());
      for (const auto& e : r.at("coeff")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("coefficient must be [id, value]");
        row.coeff[e[0].get<VertexId>()] = detail::rational_from_json(e[1]);
      }
      row.rhs = detail::rational_from_json(r.at("beta"));
      c.y.push_back(detail::rational_from_json(r.at("y")));
      c.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < c.rows.size(); ++i)
      c.row_ratios.push_back(c.rows[i].rhs == 0 ? Rational(0) : c.rows[i].lhs(c.hitting_set) / c.rows[i].rhs);
    for (const auto& d : j.at("diamonds")) {
      Diamond dm;
      dm.a = d.at("a").get<VertexId>();
      dm.b = d.at("b").get<VertexId>();
      const auto& paths = d.at("paths");
      if (paths.size() != 3) throw ParseError("a diamond has three paths");
      for (std::size_t i = 0; i < 3; ++i) dm.paths[i] = detail::path_from_json(paths[i]);
      c.diamonds.push_back(std::move(dm));
    }
    return c;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

inline Certificate certificate_from_string(const std::string& s) {
  try {
    return certificate_from_json(Json::parse(s));
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

}  // namespace dhs
