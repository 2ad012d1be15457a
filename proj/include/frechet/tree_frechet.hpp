#pragma once

// Frechet distance between embedded trees: a bottom-up dynamic program over
// pairs of equal-depth nodes, combining child subtrees with bottleneck
// matchings. Entry points for rooted trees and for unrooted trees (rooted at
// the contracted-tree centers, which any isomorphism must match).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frechet/embedded_graph.hpp"
#include "frechet/isomorphism.hpp"
#include "frechet/matching.hpp"

namespace frechet {

struct RootedTree {
  ContractedGraph graph;
  std::vector<VertexId> ids;  // node index -> id, ascending
  std::vector<Point> points;
  std::vector<int> parent;                // -1 at the root
  std::vector<std::vector<int>> children;  // ascending by child id
  std::vector<int> depth;
  std::vector<int> height;
  std::vector<int> in_edge;        // contracted edge index towards the parent, -1 at the root
  std::vector<bool> in_edge_down;  // stored curve already runs parent -> child
  std::vector<std::vector<int>> levels;  // depth -> node indices, ascending
  int root = -1;

  std::size_t size() const { return ids.size(); }
};

inline RootedTree root_tree(const ContractedGraph& t, const VertexId& root) {
  if (!t.vertices.count(root)) fail(errc::unknown_vertex, "root '" + root + "' is not a vertex");
  if (t.edges.size() + 1 != t.vertices.size())
    fail(errc::not_a_tree, "vertex/edge count rules out a tree");

  RootedTree r;
  r.graph = t;
  std::map<VertexId, int> index;
  for (const auto& [id, p] : r.graph.vertices) {
    index.emplace(id, static_cast<int>(r.ids.size()));
    r.ids.push_back(id);
    r.points.push_back(p);
  }
  const int n = static_cast<int>(r.ids.size());
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(n);  // (neighbor, edge index)
  for (std::size_t e = 0; e < r.graph.edges.size(); ++e) {
    const int a = index.at(r.graph.edges[e].u);
    const int b = index.at(r.graph.edges[e].v);
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }

  r.parent.assign(n, -2);
  r.children.assign(n, {});
  r.depth.assign(n, 0);
  r.height.assign(n, 0);
  r.in_edge.assign(n, -1);
  r.in_edge_down.assign(n, false);
  r.root = index.at(root);
  r.parent[r.root] = -1;

  std::vector<int> order;
  order.reserve(n);
  order.push_back(r.root);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int v = order[head];
    for (const auto& [w, e] : adj[v]) {
      if (r.parent[w] != -2) continue;
      r.parent[w] = v;
      r.depth[w] = r.depth[v] + 1;
      r.in_edge[w] = static_cast<int>(e);
      r.in_edge_down[w] = r.graph.edges[e].u == r.ids[v];
      r.children[v].push_back(w);
      order.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != n) fail(errc::not_a_tree, "graph is not connected");
  for (auto& c : r.children) std::sort(c.begin(), c.end());  // index order == id order

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    int h = 0;
    for (int c : r.children[v]) h = std::max(h, r.height[c] + 1);
    r.height[v] = h;
  }
  r.levels.assign(static_cast<std::size_t>(r.height[r.root]) + 1, {});
  for (int v = 0; v < n; ++v) r.levels[r.depth[v]].push_back(v);
  return r;
}

// Subtree distances for pairs of equal-depth nodes, plus the witness child
// matchings used to replay an isomorphism top-down.
class DpTable {
public:
  DpTable(const RootedTree& a, const RootedTree& b) : a_(&a), b_(&b) {
    const std::size_t depths = std::min(a.levels.size(), b.levels.size());
    cells_.resize(depths);
    for (std::size_t d = 0; d < depths; ++d)
      cells_[d].assign(a.levels[d].size() * b.levels[d].size(), ExtendedDistance::undefined());
    pos_a_.assign(a.size(), 0);
    pos_b_.assign(b.size(), 0);
    for (const auto& level : a.levels)
      for (std::size_t i = 0; i < level.size(); ++i) pos_a_[level[i]] = i;
    for (const auto& level : b.levels)
      for (std::size_t i = 0; i < level.size(); ++i) pos_b_[level[i]] = i;
  }

  bool has(int na, int nb) const {
    const int d = a_->depth[na];
    return d == b_->depth[nb] && d < static_cast<int>(cells_.size());
  }

  ExtendedDistance at(int na, int nb) const {
    if (!has(na, nb))
      fail(errc::missing_dp_entry, "dp entry for a pair of unequal depth (ordering bug)");
    return cells_[a_->depth[na]][slot(na, nb)];
  }

  void set(int na, int nb, ExtendedDistance v) { cells_[a_->depth[na]][slot(na, nb)] = v; }

  void set_witness(int na, int nb, Matching m) { witness_[key(na, nb)] = std::move(m); }

  const Matching* witness(int na, int nb) const {
    const auto it = witness_.find(key(na, nb));
    return it == witness_.end() ? nullptr : &it->second;
  }

private:
  std::size_t slot(int na, int nb) const {
    return pos_a_[na] * b_->levels[b_->depth[nb]].size() + pos_b_[nb];
  }
  std::uint64_t key(int na, int nb) const {
    return (static_cast<std::uint64_t>(na) << 32) | static_cast<std::uint32_t>(nb);
  }

  const RootedTree* a_;
  const RootedTree* b_;
  std::vector<std::vector<ExtendedDistance>> cells_;
  std::vector<std::size_t> pos_a_, pos_b_;
  std::unordered_map<std::uint64_t, Matching> witness_;
};

// Distance between the subtrees rooted at equal-depth nodes a and b. All
// child-pair entries must already be present in dp. The optional witness
// receives the bottleneck child matching when the result is finite.
inline ExtendedDistance subtree_distance(const RootedTree& A, int a, const RootedTree& B, int b,
                                         const DpTable& dp, const EdgeCurveTable& table,
                                         Matching* witness_out = nullptr) {
  const auto& ca = A.children[a];
  const auto& cb = B.children[b];
  if (A.height[a] != B.height[b] || ca.size() != cb.size()) return ExtendedDistance::undefined();
  const double pd = point_distance(A.points[a], B.points[b]);
  if (ca.empty()) {
    if (witness_out) witness_out->clear();
    return ExtendedDistance::finite(pd);
  }
  WeightMatrix w(ca.size(), cb.size());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const ContractedEdge& e1 = A.graph.edges[A.in_edge[ca[i]]];
    for (std::size_t j = 0; j < cb.size(); ++j) {
      const ExtendedDistance sub = dp.at(ca[i], cb[j]);
      if (!sub.defined()) continue;
      const ContractedEdge& e2 = B.graph.edges[B.in_edge[cb[j]]];
      if (e1.marked != e2.marked) continue;
      // both edges aligned parent -> child
      const double ec = table.oriented(A.in_edge[ca[i]], B.in_edge[cb[j]],
                                       !A.in_edge_down[ca[i]], !B.in_edge_down[cb[j]]);
      w.at(i, j) = ExtendedDistance::finite(std::max(sub.value(), ec));
    }
  }
  const auto bm = bottleneck_matching(w);
  if (!bm) return ExtendedDistance::undefined();
  if (witness_out) *witness_out = bm->matching;
  return ExtendedDistance::finite(std::max(bm->value, pd));
}

// Top-down replay of the stored bottleneck witnesses into a vertex bijection
// realizing the dp value. Requires a finite root entry.
inline Isomorphism extract_isomorphism(const RootedTree& A, const RootedTree& B,
                                       const DpTable& dp) {
  if (!dp.has(A.root, B.root) || !dp.at(A.root, B.root).defined())
    fail(errc::undefined_witness, "extract_isomorphism: root entry is undefined");
  std::map<VertexId, VertexId> vm;
  std::vector<std::pair<int, int>> stack{{A.root, B.root}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    vm[A.ids[a]] = B.ids[b];
    if (A.children[a].empty()) continue;
    const Matching* m = dp.witness(a, b);
    if (!m) fail(errc::internal_error, "extract_isomorphism: missing witness matching");
    for (std::size_t i = 0; i < A.children[a].size(); ++i)
      stack.push_back({A.children[a][i], B.children[b][(*m)[i]]});
  }
  auto iso = bind_isomorphism(vm, A.graph, B.graph);
  if (!iso) fail(errc::internal_error, "extract_isomorphism: replayed map is not an isomorphism");
  return *iso;
}

struct TreeFrechetResult {
  ExtendedDistance distance;
  std::optional<Isomorphism> witness;
};

// Fills the dp table bottom-up over equal-depth pairs (deepest level first)
// and returns the root entry with its witness isomorphism.
inline TreeFrechetResult tree_frechet_rooted(const RootedTree& A, const RootedTree& B,
                                             const EdgeCurveTable& table) {
  if (A.levels.size() != B.levels.size()) return {ExtendedDistance::undefined(), std::nullopt};
  DpTable dp(A, B);
  Matching scratch;
  for (int d = static_cast<int>(A.levels.size()) - 1; d >= 0; --d) {
    for (int a : A.levels[d]) {
      for (int b : B.levels[d]) {
        const ExtendedDistance v = subtree_distance(A, a, B, b, dp, table, &scratch);
        dp.set(a, b, v);
        if (v.defined() && !A.children[a].empty()) dp.set_witness(a, b, scratch);
      }
    }
  }
  const ExtendedDistance result = dp.at(A.root, B.root);
  if (!result.defined()) return {result, std::nullopt};
  return {result, extract_isomorphism(A, B, dp)};
}

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline void check_is_tree(const EmbeddedGraph& g) {
  validate(g);
  if (g.vertices.empty()) fail(errc::not_a_tree, "empty graph is not a tree");
  if (g.edges.size() + 1 != g.vertices.size())
    fail(errc::not_a_tree, "vertex/edge count rules out a tree");
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::set<VertexId> seen{g.vertices.begin()->first};
  std::vector<VertexId> stack{g.vertices.begin()->first};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    const auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (const VertexId& w : it->second)
      if (seen.insert(w).second) stack.push_back(w);
  }
  if (seen.size() != g.vertices.size()) fail(errc::not_a_tree, "graph is not connected");
}

}  // namespace detail

// Rooted entry point from embedded trees; the roots are protected so a
// degree-2 root survives contraction.
inline TreeFrechetResult tree_frechet_rooted(const EmbeddedGraph& t1, const EmbeddedGraph& t2,
                                             const VertexId& root1, const VertexId& root2,
                                             PhaseTimings* timings = nullptr) {
  detail::check_is_tree(t1);
  detail::check_is_tree(t2);
  auto t0 = std::chrono::steady_clock::now();
  const ContractedGraph c1 = contract_degree2(t1, {root1});
  const ContractedGraph c2 = contract_degree2(t2, {root2});
  if (timings) timings->contraction_ms = detail::ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  const EdgeCurveTable table = edge_curve_table(c1, c2);
  if (timings) timings->table_ms = detail::ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  const TreeFrechetResult r = tree_frechet_rooted(root_tree(c1, root1), root_tree(c2, root2), table);
  if (timings) timings->solve_ms = detail::ms_since(t0);
  return r;
}

// Unrooted trees are contracted fully, rooted at the centers of the
// contracted trees (any tree isomorphism matches center onto center) and the
// two pairings of a two-center pair are both tried.
inline TreeFrechetResult tree_frechet_unrooted(const EmbeddedGraph& t1, const EmbeddedGraph& t2,
                                               PhaseTimings* timings = nullptr) {
  detail::check_is_tree(t1);
  detail::check_is_tree(t2);
  auto t0 = std::chrono::steady_clock::now();
  const ContractedGraph c1 = contract_degree2(t1);
  const ContractedGraph c2 = contract_degree2(t2);
  if (timings) timings->contraction_ms = detail::ms_since(t0);

  const std::vector<VertexId> centers1 = tree_center(c1);
  const std::vector<VertexId> centers2 = tree_center(c2);
  if (centers1.size() != centers2.size()) return {ExtendedDistance::undefined(), std::nullopt};

  t0 = std::chrono::steady_clock::now();
  const EdgeCurveTable table = edge_curve_table(c1, c2);
  if (timings) timings->table_ms = detail::ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  const RootedTree r1 = root_tree(c1, centers1.front());
  TreeFrechetResult best = tree_frechet_rooted(r1, root_tree(c2, centers2.front()), table);
  if (centers2.size() == 2) {
    TreeFrechetResult alt = tree_frechet_rooted(r1, root_tree(c2, centers2.back()), table);
    if (alt.distance < best.distance) best = std::move(alt);
  }
  if (timings) timings->solve_ms = detail::ms_since(t0);
  return best;
}

}  // namespace frechet
