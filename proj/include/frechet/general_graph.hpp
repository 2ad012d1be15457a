#pragma once

// Frechet distance for general embedded graphs at desk scale: binary search
// over the candidate distances with an exact backtracking decision procedure
// for distance-respecting isomorphisms.

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "frechet/embedded_graph.hpp"
#include "frechet/isomorphism.hpp"
#include "frechet/tree_frechet.hpp"

namespace frechet {

// Sorted union of all pairwise vertex distances and all edge-curve table
// entries (both orientations). Every achievable distance is in here.
inline std::vector<double> candidate_distances(const ContractedGraph& g1,
                                               const ContractedGraph& g2,
                                               const EdgeCurveTable& table) {
  std::vector<double> vals;
  vals.reserve(g1.vertices.size() * g2.vertices.size() + 2 * table.fwd.size());
  for (const auto& [a, pa] : g1.vertices)
    for (const auto& [b, pb] : g2.vertices) vals.push_back(point_distance(pa, pb));
  vals.insert(vals.end(), table.fwd.begin(), table.fwd.end());
  vals.insert(vals.end(), table.rev.begin(), table.rev.end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

namespace detail {

struct IndexedGraph {
  std::vector<VertexId> ids;
  std::vector<Point> points;
  std::vector<std::vector<int>> edge_at;  // vertex x vertex -> edge index or -1
  std::vector<int> degree;
  std::vector<int> marked_degree;

  explicit IndexedGraph(const ContractedGraph& g) {
    for (const auto& [id, p] : g.vertices) {
      ids.push_back(id);
      points.push_back(p);
    }
    const int n = static_cast<int>(ids.size());
    std::map<VertexId, int> index;
    for (int i = 0; i < n; ++i) index.emplace(ids[i], i);
    edge_at.assign(n, std::vector<int>(n, -1));
    degree.assign(n, 0);
    marked_degree.assign(n, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const int a = index.at(g.edges[e].u);
      const int b = index.at(g.edges[e].v);
      edge_at[a][b] = edge_at[b][a] = static_cast<int>(e);
      ++degree[a];
      ++degree[b];
      if (g.edges[e].marked) {
        ++marked_degree[a];
        ++marked_degree[b];
      }
    }
  }
};

struct RespectingSearch {
  const ContractedGraph& g1;
  const ContractedGraph& g2;
  const EdgeCurveTable& table;
  double delta;
  IndexedGraph a, b;
  std::vector<std::vector<int>> candidates;  // per g1 vertex, by geometric proximity
  std::vector<int> assigned;                 // g1 index -> g2 index or -1
  std::vector<bool> used;

  RespectingSearch(const ContractedGraph& g1_, const ContractedGraph& g2_,
                   const EdgeCurveTable& table_, double delta_)
      : g1(g1_), g2(g2_), table(table_), delta(delta_), a(g1_), b(g2_) {}

  bool prepare() {
    const int n = static_cast<int>(a.ids.size());
    candidates.assign(n, {});
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<double, int>> order;
      for (int w = 0; w < n; ++w) {
        if (a.degree[v] != b.degree[w] || a.marked_degree[v] != b.marked_degree[w]) continue;
        const double d = point_distance(a.points[v], b.points[w]);
        if (d <= delta) order.push_back({d, w});
      }
      if (order.empty()) return false;
      std::sort(order.begin(), order.end());
      for (const auto& [d, w] : order) candidates[v].push_back(w);
    }
    assigned.assign(n, -1);
    used.assign(n, false);
    return true;
  }

  bool feasible_pair(int v, int w) const {
    for (int u = 0; u < v; ++u) {
      const int e1 = a.edge_at[v][u];
      const int e2 = b.edge_at[w][assigned[u]];
      if ((e1 < 0) != (e2 < 0)) return false;
      if (e1 < 0) continue;
      const ContractedEdge& ce1 = g1.edges[e1];
      const ContractedEdge& ce2 = g2.edges[e2];
      if (ce1.marked != ce2.marked) return false;
      // orientation of the matched pair follows the vertex images
      const VertexId& image_of_first = ce1.u == a.ids[v] ? b.ids[w] : b.ids[assigned[u]];
      const double d = image_of_first == ce2.u ? table.forward(e1, e2) : table.reverse(e1, e2);
      if (d > delta) return false;
    }
    return true;
  }

  bool search(int v) {
    const int n = static_cast<int>(a.ids.size());
    if (v == n) return true;
    for (int w : candidates[v]) {
      if (used[w]) continue;
      if (!feasible_pair(v, w)) continue;
      assigned[v] = w;
      used[w] = true;
      if (search(v + 1)) return true;
      used[w] = false;
      assigned[v] = -1;
    }
    return false;
  }
};

}  // namespace detail

// An isomorphism whose vertex displacements and matched oriented edge-curve
// distances all stay within delta, or nullopt. Complete backtracking search
// in sorted vertex order with degree/kind/distance pruning.
inline std::optional<Isomorphism> isomorphism_respecting(const ContractedGraph& g1,
                                                         const ContractedGraph& g2,
                                                         const EdgeCurveTable& table,
                                                         double delta) {
  if (delta < 0.0) fail(errc::negative_delta, "isomorphism_respecting: negative delta");
  if (g1.vertices.size() != g2.vertices.size()) return std::nullopt;
  if (g1.edges.size() != g2.edges.size()) return std::nullopt;
  if (g1.vertices.empty()) return Isomorphism{};

  detail::RespectingSearch s(g1, g2, table, delta);
  if (!s.prepare()) return std::nullopt;
  if (!s.search(0)) return std::nullopt;
  std::map<VertexId, VertexId> vm;
  for (std::size_t v = 0; v < s.a.ids.size(); ++v) vm[s.a.ids[v]] = s.b.ids[s.assigned[v]];
  auto iso = bind_isomorphism(vm, g1, g2);
  if (!iso) fail(errc::internal_error, "isomorphism_respecting: search produced a non-isomorphism");
  return iso;
}

struct GraphFrechetResult {
  ExtendedDistance distance;
  std::optional<Isomorphism> witness;
};

// Contracts both graphs, builds the candidate set and binary-searches it with
// the decision procedure. vertex_guard > 0 rejects contracted graphs larger
// than the guard (the decision procedure is exponential in the worst case).
inline GraphFrechetResult graph_frechet(const EmbeddedGraph& g1, const EmbeddedGraph& g2,
                                        PhaseTimings* timings = nullptr,
                                        std::size_t vertex_guard = 0) {
  validate(g1);
  validate(g2);
  auto t0 = std::chrono::steady_clock::now();
  const ContractedGraph c1 = contract_degree2(g1);
  const ContractedGraph c2 = contract_degree2(g2);
  if (timings) timings->contraction_ms = detail::ms_since(t0);
  if (vertex_guard > 0 &&
      (c1.vertices.size() > vertex_guard || c2.vertices.size() > vertex_guard))
    fail(errc::size_guard, "contracted graph exceeds the vertex guard of " +
                               std::to_string(vertex_guard));

  if (c1.vertices.size() != c2.vertices.size() || c1.edges.size() != c2.edges.size())
    return {ExtendedDistance::undefined(), std::nullopt};
  if (c1.vertices.empty()) return {ExtendedDistance::finite(0.0), Isomorphism{}};

  t0 = std::chrono::steady_clock::now();
  const EdgeCurveTable table = edge_curve_table(c1, c2);
  if (timings) timings->table_ms = detail::ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  const std::vector<double> values = candidate_distances(c1, c2, table);
  GraphFrechetResult result{ExtendedDistance::undefined(), std::nullopt};
  // any isomorphism respects the largest candidate, so absence here means
  // the graphs are simply not isomorphic
  if (auto top = isomorphism_respecting(c1, c2, table, values.back())) {
    std::size_t lo = 0, hi = values.size() - 1;
    std::optional<Isomorphism> best = std::move(top);
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (auto iso = isomorphism_respecting(c1, c2, table, values[mid])) {
        best = std::move(iso);
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    result = {ExtendedDistance::finite(values[lo]), std::move(best)};
  }
  if (timings) timings->solve_ms = detail::ms_since(t0);
  return result;
}

}  // namespace frechet
