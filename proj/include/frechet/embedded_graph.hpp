#pragma once

// Straight-line embedded graphs, degree-2 path contraction and the pairwise
// edge-curve distance table.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

using VertexId = std::string;

struct EmbeddedGraph {
  std::map<VertexId, Point> vertices;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::optional<VertexId> root;

  std::size_t dimension() const {
    return vertices.empty() ? 0 : vertices.begin()->second.dimension();
  }

  friend bool operator==(const EmbeddedGraph&, const EmbeddedGraph&) = default;
};

inline std::pair<VertexId, VertexId> normalized_edge(const VertexId& a, const VertexId& b) {
  return a < b ? std::pair<VertexId, VertexId>{a, b} : std::pair<VertexId, VertexId>{b, a};
}

inline void validate(const EmbeddedGraph& g) {
  const std::size_t dim = g.dimension();
  for (const auto& [id, p] : g.vertices) {
    if (id.empty()) fail(errc::parse_error, "empty vertex id");
    if (p.dimension() != dim)
      fail(errc::dimension_mismatch, "vertex '" + id + "' has dimension " +
                                         std::to_string(p.dimension()) + ", expected " +
                                         std::to_string(dim));
    if (!p.all_finite())
      fail(errc::nonfinite_coordinate, "vertex '" + id + "' has a non-finite coordinate");
  }
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& [a, b] : g.edges) {
    if (!g.vertices.count(a))
      fail(errc::unknown_endpoint, "edge endpoint '" + a + "' is not a vertex");
    if (!g.vertices.count(b))
      fail(errc::unknown_endpoint, "edge endpoint '" + b + "' is not a vertex");
    if (a == b) fail(errc::self_loop, "self-loop at vertex '" + a + "'");
    if (!seen.insert(normalized_edge(a, b)).second)
      fail(errc::duplicate_edge, "duplicate edge (" + a + ", " + b + ")");
  }
  if (g.root && !g.vertices.count(*g.root))
    fail(errc::unknown_vertex, "root '" + *g.root + "' is not a vertex");
}

struct ContractedEdge {
  VertexId u, v;   // u < v
  Polyline curve;  // runs from u's point to v's point
  bool marked = false;

  friend bool operator==(const ContractedEdge&, const ContractedEdge&) = default;
};

struct ContractedGraph {
  std::map<VertexId, Point> vertices;
  std::vector<ContractedEdge> edges;  // sorted by (u, v)

  std::size_t dimension() const {
    return vertices.empty() ? 0 : vertices.begin()->second.dimension();
  }

  friend bool operator==(const ContractedGraph&, const ContractedGraph&) = default;
};

// edge indices incident to each vertex, ascending
inline std::map<VertexId, std::vector<std::size_t>> incidence(const ContractedGraph& g) {
  std::map<VertexId, std::vector<std::size_t>> inc;
  for (const auto& [id, p] : g.vertices) inc[id];
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    inc[g.edges[e].u].push_back(e);
    inc[g.edges[e].v].push_back(e);
  }
  return inc;
}

inline std::map<std::pair<VertexId, VertexId>, std::size_t> edge_index(const ContractedGraph& g) {
  std::map<std::pair<VertexId, VertexId>, std::size_t> idx;
  for (std::size_t e = 0; e < g.edges.size(); ++e) idx[{g.edges[e].u, g.edges[e].v}] = e;
  return idx;
}

namespace detail {

inline Polyline lift_curve(const EmbeddedGraph& g, const VertexId& u, const VertexId& v) {
  if (g.vertices.at(u) == g.vertices.at(v))
    fail(errc::degenerate_edge,
         "edge (" + u + ", " + v + ") connects coincident points; its curve would degenerate");
  return Polyline{g.vertices.at(u), g.vertices.at(v)};
}

// Walks chains of unprotected degree-2 vertices starting from keepers and
// replaces each maximal chain by one marked edge carrying the concatenated
// curve. Components without any keeper are cycles of degree-2 vertices; they
// have no anchor to contract towards and pass through unchanged. Operates on
// curve-carrying edges so it applies to already contracted graphs as well
// (idempotence).
inline ContractedGraph contract_impl(const ContractedGraph& g,
                                     const std::set<VertexId>& protected_vertices) {
  for (const VertexId& p : protected_vertices)
    if (!g.vertices.count(p)) fail(errc::unknown_vertex, "protected vertex '" + p + "' missing");

  const auto inc = incidence(g);
  auto is_keeper = [&](const VertexId& id) {
    return protected_vertices.count(id) || inc.at(id).size() != 2;
  };

  ContractedGraph out;
  std::set<VertexId> visited_interior;
  std::set<std::pair<VertexId, VertexId>> emitted;

  for (const auto& [id, p] : g.vertices) {
    if (!is_keeper(id)) continue;
    out.vertices.emplace(id, p);
    for (std::size_t e0 : inc.at(id)) {
      // walk away from `id` through interior vertices
      VertexId cur = id;
      std::size_t e = e0;
      std::vector<Point> pts;
      bool merged = false;
      bool marked = g.edges[e0].marked;
      while (true) {
        const ContractedEdge& edge = g.edges[e];
        const bool forward = edge.u == cur;
        const VertexId& next = forward ? edge.v : edge.u;
        const auto& cpts = edge.curve.points();
        if (pts.empty()) pts.push_back(forward ? cpts.front() : cpts.back());
        if (forward) {
          for (std::size_t k = 1; k < cpts.size(); ++k)
            if (cpts[k] != pts.back()) pts.push_back(cpts[k]);
        } else {
          for (std::size_t k = cpts.size() - 1; k-- > 0;)
            if (cpts[k] != pts.back()) pts.push_back(cpts[k]);
        }
        if (is_keeper(next)) {
          if (next == id)
            fail(errc::contraction_self_loop,
                 "contracting the degree-2 path at '" + id + "' would create a self-loop");
          if (next < id) {
            pts.clear();  // emitted when walking from the smaller endpoint
            break;
          }
          auto key = std::pair<VertexId, VertexId>{id, next};
          if (!emitted.insert(key).second)
            fail(errc::contraction_multigraph, "contraction would create parallel edges between '" +
                                                   id + "' and '" + next + "'");
          if (pts.size() < 2)
            fail(errc::degenerate_edge,
                 "curve between '" + id + "' and '" + next + "' degenerates to a point");
          out.edges.push_back({id, next, Polyline(std::move(pts)), marked || merged});
          break;
        }
        visited_interior.insert(next);
        merged = true;
        const auto& nexti = inc.at(next);
        const std::size_t e2 = nexti[0] == e ? nexti[1] : nexti[0];
        marked = marked || g.edges[e2].marked;
        cur = next;
        e = e2;
      }
    }
  }

  // leftover vertices sit on keeperless cycle components; keep them verbatim
  std::set<VertexId> cycle_vertices;
  for (const auto& [id, p] : g.vertices) {
    if (!is_keeper(id) && !visited_interior.count(id)) {
      cycle_vertices.insert(id);
      out.vertices.emplace(id, p);
    }
  }
  if (!cycle_vertices.empty()) {
    for (const ContractedEdge& e : g.edges)
      if (cycle_vertices.count(e.u)) out.edges.push_back(e);
  }

  std::sort(out.edges.begin(), out.edges.end(),
            [](const ContractedEdge& a, const ContractedEdge& b) {
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  return out;
}

}  // namespace detail

inline ContractedGraph contract_degree2(const EmbeddedGraph& g,
                                        const std::set<VertexId>& protected_vertices = {}) {
  validate(g);
  ContractedGraph lifted;
  lifted.vertices = g.vertices;
  for (const auto& [a, b] : g.edges) {
    auto [u, v] = normalized_edge(a, b);
    lifted.edges.push_back({u, v, detail::lift_curve(g, u, v), false});
  }
  std::sort(lifted.edges.begin(), lifted.edges.end(),
            [](const ContractedEdge& a, const ContractedEdge& b) {
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  return detail::contract_impl(lifted, protected_vertices);
}

inline ContractedGraph contract_degree2(const ContractedGraph& g,
                                        const std::set<VertexId>& protected_vertices = {}) {
  return detail::contract_impl(g, protected_vertices);
}

namespace detail {

inline std::vector<VertexId> tree_center_impl(const std::map<VertexId, std::vector<VertexId>>& adj,
                                              std::size_t edge_count) {
  const std::size_t n = adj.size();
  if (n == 0) fail(errc::not_a_tree, "empty graph is not a tree");
  if (edge_count + 1 != n) fail(errc::not_a_tree, "vertex/edge count rules out a tree");
  // connectivity
  {
    std::vector<VertexId> stack{adj.begin()->first};
    std::set<VertexId> seen{adj.begin()->first};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (const VertexId& w : adj.at(v))
        if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != n) fail(errc::not_a_tree, "graph is not connected");
  }

  std::map<VertexId, std::size_t> degree;
  for (const auto& [v, nb] : adj) degree[v] = nb.size();
  std::set<VertexId> remaining;
  for (const auto& [v, nb] : adj) remaining.insert(v);
  std::vector<VertexId> leaves;
  for (const auto& [v, d] : degree)
    if (d <= 1) leaves.push_back(v);
  while (remaining.size() > 2) {
    std::vector<VertexId> next;
    for (const VertexId& leaf : leaves) {
      remaining.erase(leaf);
      for (const VertexId& w : adj.at(leaf)) {
        if (!remaining.count(w)) continue;
        if (--degree[w] == 1) next.push_back(w);
      }
    }
    leaves = std::move(next);
  }
  return {remaining.begin(), remaining.end()};
}

}  // namespace detail

// The one or two middle vertices left by iteratively peeling leaves.
inline std::vector<VertexId> tree_center(const EmbeddedGraph& t) {
  validate(t);
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& [id, p] : t.vertices) adj[id];
  for (const auto& [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return detail::tree_center_impl(adj, t.edges.size());
}

inline std::vector<VertexId> tree_center(const ContractedGraph& t) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& [id, p] : t.vertices) adj[id];
  for (const ContractedEdge& e : t.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return detail::tree_center_impl(adj, t.edges.size());
}

// Pairwise Frechet distances between all edge curves of two contracted
// graphs, in both orientations.
struct EdgeCurveTable {
  std::size_t rows = 0, cols = 0;
  std::vector<double> fwd, rev;

  double forward(std::size_t i, std::size_t j) const { return fwd[i * cols + j]; }
  double reverse(std::size_t i, std::size_t j) const { return rev[i * cols + j]; }

  // aligned distance when edge i is traversed flipped1-wise and edge j
  // flipped2-wise relative to their stored orientations
  double oriented(std::size_t i, std::size_t j, bool flip1, bool flip2) const {
    return flip1 == flip2 ? forward(i, j) : reverse(i, j);
  }
};

inline EdgeCurveTable edge_curve_table(const ContractedGraph& g1, const ContractedGraph& g2) {
  if (!g1.vertices.empty() && !g2.vertices.empty() && g1.dimension() != g2.dimension())
    fail(errc::dimension_mismatch, "edge_curve_table: graphs of different dimension");
  EdgeCurveTable t;
  t.rows = g1.edges.size();
  t.cols = g2.edges.size();
  t.fwd.resize(t.rows * t.cols);
  t.rev.resize(t.rows * t.cols);
  std::vector<Polyline> reversed2;
  reversed2.reserve(t.cols);
  for (const ContractedEdge& e : g2.edges) reversed2.push_back(e.curve.reversed());
  for (std::size_t i = 0; i < t.rows; ++i) {
    for (std::size_t j = 0; j < t.cols; ++j) {
      t.fwd[i * t.cols + j] = curve_frechet(g1.edges[i].curve, g2.edges[j].curve);
      t.rev[i * t.cols + j] = curve_frechet(g1.edges[i].curve, reversed2[j]);
    }
  }
  return t;
}

// wall-clock phase breakdown reported by the top-level solvers
struct PhaseTimings {
  double contraction_ms = 0.0;
  double table_ms = 0.0;
  double solve_ms = 0.0;
};

}  // namespace frechet
