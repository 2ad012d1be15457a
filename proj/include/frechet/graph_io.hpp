#pragma once

// JSON graph files: {"dimension": d, "vertices": [{"id", "coords"}...],
// "edges": [[id, id]...], "root"?: id}. save_graph emits a canonical form
// (sorted vertices, normalized sorted edges) so identical graphs serialize to
// identical bytes.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "frechet/embedded_graph.hpp"

namespace frechet {

inline EmbeddedGraph load_graph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::parse_error, std::string("graph file: ") + e.what());
  }
  try {
    if (!j.is_object()) fail(errc::parse_error, "graph file: top level must be an object");
    for (const auto& [key, value] : j.items()) {
      if (key != "dimension" && key != "vertices" && key != "edges" && key != "root")
        fail(errc::parse_error, "graph file: unknown key '" + key + "'");
    }
    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
      fail(errc::parse_error, "graph file: missing integer 'dimension'");
    const int dim = j["dimension"].get<int>();
    if (dim < 1) fail(errc::parse_error, "graph file: dimension must be >= 1");
    if (!j.contains("vertices") || !j["vertices"].is_array())
      fail(errc::parse_error, "graph file: missing array 'vertices'");
    if (!j.contains("edges") || !j["edges"].is_array())
      fail(errc::parse_error, "graph file: missing array 'edges'");

    EmbeddedGraph g;
    for (const auto& v : j["vertices"]) {
      if (!v.is_object() || !v.contains("id") || !v["id"].is_string() || !v.contains("coords") ||
          !v["coords"].is_array())
        fail(errc::parse_error, "graph file: each vertex needs a string 'id' and array 'coords'");
      const std::string id = v["id"].get<std::string>();
      if (id.empty()) fail(errc::parse_error, "graph file: empty vertex id");
      if (v["coords"].size() != static_cast<std::size_t>(dim))
        fail(errc::parse_error, "graph file: vertex '" + id + "' has " +
                                    std::to_string(v["coords"].size()) + " coords, expected " +
                                    std::to_string(dim));
      std::vector<double> coords;
      for (const auto& c : v["coords"]) {
        if (!c.is_number()) fail(errc::parse_error, "graph file: non-numeric coordinate of '" + id + "'");
        coords.push_back(c.get<double>());
      }
      if (!g.vertices.emplace(id, Point(std::move(coords))).second)
        fail(errc::parse_error, "graph file: duplicate vertex id '" + id + "'");
    }
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        fail(errc::parse_error, "graph file: each edge must be a pair of vertex ids");
      g.edges.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
    }
    if (j.contains("root")) {
      if (!j["root"].is_string()) fail(errc::parse_error, "graph file: 'root' must be a vertex id");
      g.root = j["root"].get<std::string>();
      if (!g.vertices.count(*g.root))
        fail(errc::parse_error, "graph file: root '" + *g.root + "' names no vertex");
    }
    validate(g);
    return g;
  } catch (const error& e) {
    if (e.code() == errc::parse_error) throw;
    fail(errc::parse_error, std::string("graph file: ") + e.what());
  }
}

inline std::string save_graph(const EmbeddedGraph& g) {
  nlohmann::json j;
  j["dimension"] = static_cast<int>(g.dimension());
  j["vertices"] = nlohmann::json::array();
  for (const auto& [id, p] : g.vertices) {
    nlohmann::json v;
    v["id"] = id;
    v["coords"] = p.coords();
    j["vertices"].push_back(std::move(v));
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) edges.push_back(normalized_edge(a, b));
  std::sort(edges.begin(), edges.end());
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
  if (g.root) j["root"] = *g.root;
  return j.dump() + "\n";
}

inline EmbeddedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_graph(buf.str());
  } catch (const error& e) {
    fail(errc::parse_error, path + ": " + e.what());
  }
}

inline void save_graph_file(const EmbeddedGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::parse_error, "cannot open '" + path + "' for writing");
  out << save_graph(g);
}

}  // namespace frechet
