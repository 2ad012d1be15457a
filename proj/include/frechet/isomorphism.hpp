#pragma once

// Vertex bijections between contracted graphs and their realized cost.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "frechet/embedded_graph.hpp"

namespace frechet {

struct Isomorphism {
  std::map<VertexId, VertexId> vertex_map;  // G1 -> G2
  std::vector<std::size_t> edge_image;      // G1 edge index -> G2 edge index
  std::vector<bool> edge_flipped;           // stored orientations disagree under the map
};

// Validates and completes a vertex bijection into a full Isomorphism:
// adjacency and marked/plain edge kinds must be preserved. Returns nullopt
// otherwise.
inline std::optional<Isomorphism> bind_isomorphism(const std::map<VertexId, VertexId>& vertex_map,
                                                   const ContractedGraph& g1,
                                                   const ContractedGraph& g2) {
  if (g1.vertices.size() != g2.vertices.size()) return std::nullopt;
  if (g1.edges.size() != g2.edges.size()) return std::nullopt;
  if (vertex_map.size() != g1.vertices.size()) return std::nullopt;
  std::set<VertexId> image;
  for (const auto& [a, b] : vertex_map) {
    if (!g1.vertices.count(a) || !g2.vertices.count(b)) return std::nullopt;
    image.insert(b);
  }
  if (image.size() != g2.vertices.size()) return std::nullopt;

  const auto idx2 = edge_index(g2);
  Isomorphism iso;
  iso.vertex_map = vertex_map;
  iso.edge_image.reserve(g1.edges.size());
  iso.edge_flipped.reserve(g1.edges.size());
  for (const ContractedEdge& e : g1.edges) {
    const VertexId& iu = vertex_map.at(e.u);
    const VertexId& iv = vertex_map.at(e.v);
    const auto it = idx2.find(normalized_edge(iu, iv));
    if (it == idx2.end()) return std::nullopt;
    if (g2.edges[it->second].marked != e.marked) return std::nullopt;
    iso.edge_image.push_back(it->second);
    iso.edge_flipped.push_back(iu > iv);
  }
  // forward preservation plus equal counts makes the edge map bijective, so
  // non-edges map to non-edges as well
  return iso;
}

// max over vertex displacements and matched oriented edge-curve distances
inline double realized_cost(const Isomorphism& iso, const ContractedGraph& g1,
                            const ContractedGraph& g2, const EdgeCurveTable& table) {
  double cost = 0.0;
  for (const auto& [a, b] : iso.vertex_map)
    cost = std::max(cost, point_distance(g1.vertices.at(a), g2.vertices.at(b)));
  for (std::size_t e = 0; e < g1.edges.size(); ++e) {
    const double d = iso.edge_flipped[e] ? table.reverse(e, iso.edge_image[e])
                                         : table.forward(e, iso.edge_image[e]);
    cost = std::max(cost, d);
  }
  return cost;
}

}  // namespace frechet
