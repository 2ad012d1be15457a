#pragma once

// Brute-force reference implementations and seeded instance generators. These
// back the property tests: they share the basic types, point_distance and
// curve_frechet with the production code, and nothing else. Size guards are
// hard errors so an oracle is never mistaken for a production path.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "frechet/embedded_graph.hpp"
#include "frechet/isomorphism.hpp"
#include "frechet/matching.hpp"

namespace frechet::oracle {

inline constexpr std::size_t kEnumerationGuard = 9;
inline constexpr std::size_t kBottleneckGuard = 8;

// Splice-based degree-2 contraction, written independently of the production
// chain-walking implementation. Keeperless cycle components pass through
// unchanged; contractions that would create self-loops or parallel edges are
// rejected.
inline ContractedGraph reference_contraction(const EmbeddedGraph& g,
                                             const std::set<VertexId>& protected_vertices = {}) {
  validate(g);
  ContractedGraph out;
  out.vertices = g.vertices;
  for (const auto& [a, b] : g.edges) {
    const auto [u, v] = normalized_edge(a, b);
    if (g.vertices.at(u) == g.vertices.at(v))
      fail(errc::degenerate_edge, "edge (" + u + ", " + v + ") connects coincident points");
    out.edges.push_back({u, v, Polyline{g.vertices.at(u), g.vertices.at(v)}, false});
  }

  auto degree_of = [&](const VertexId& id) {
    std::size_t d = 0;
    for (const ContractedEdge& e : out.edges) d += (e.u == id) + (e.v == id);
    return d;
  };

  // a vertex is contractible only if its component holds a keeper; splicing
  // never changes the degree of surviving vertices, so compute this once
  std::set<VertexId> contractible;
  {
    std::map<VertexId, std::vector<VertexId>> adj;
    for (const auto& [id, p] : out.vertices) adj[id];
    for (const ContractedEdge& e : out.edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::set<VertexId> seen;
    for (const auto& [start, nb] : adj) {
      if (seen.count(start)) continue;
      std::vector<VertexId> comp{start};
      seen.insert(start);
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (const VertexId& w : adj.at(comp[i]))
          if (seen.insert(w).second) comp.push_back(w);
      const bool has_keeper = std::any_of(comp.begin(), comp.end(), [&](const VertexId& v) {
        return adj.at(v).size() != 2 || protected_vertices.count(v);
      });
      if (has_keeper)
        for (const VertexId& v : comp) contractible.insert(v);
    }
  }

  while (true) {
    VertexId victim;
    bool found = false;
    for (const auto& [id, p] : out.vertices) {
      if (protected_vertices.count(id) || !contractible.count(id)) continue;
      if (degree_of(id) == 2) {
        victim = id;
        found = true;
        break;
      }
    }
    if (!found) break;

    std::vector<std::size_t> inc;
    for (std::size_t e = 0; e < out.edges.size(); ++e)
      if (out.edges[e].u == victim || out.edges[e].v == victim) inc.push_back(e);
    const ContractedEdge& e1 = out.edges[inc[0]];
    const ContractedEdge& e2 = out.edges[inc[1]];
    const VertexId a = e1.u == victim ? e1.v : e1.u;
    const VertexId b = e2.u == victim ? e2.v : e2.u;
    if (a == b)
      fail(errc::contraction_self_loop, "contraction would create a self-loop at '" + a + "'");
    for (const ContractedEdge& e : out.edges)
      if (e.u == std::min(a, b) && e.v == std::max(a, b))
        fail(errc::contraction_multigraph,
             "contraction would create parallel edges between '" + a + "' and '" + b + "'");

    // curve a -> victim -> b, then normalize to run from min(a, b)
    std::vector<Point> pts;
    auto append = [&](const Polyline& c, bool forward) {
      const auto& p = c.points();
      for (std::size_t k = 0; k < p.size(); ++k) {
        const Point& q = forward ? p[k] : p[p.size() - 1 - k];
        if (pts.empty() || q != pts.back()) pts.push_back(q);
      }
    };
    append(e1.curve, e1.u == a);
    append(e2.curve, e2.u == victim);
    if (a > b) std::reverse(pts.begin(), pts.end());
    if (pts.size() < 2)
      fail(errc::degenerate_edge, "curve between '" + a + "' and '" + b + "' degenerates");
    ContractedEdge merged{std::min(a, b), std::max(a, b), Polyline(std::move(pts)), true};

    std::vector<ContractedEdge> next;
    for (std::size_t e = 0; e < out.edges.size(); ++e)
      if (e != inc[0] && e != inc[1]) next.push_back(out.edges[e]);
    next.push_back(std::move(merged));
    out.edges = std::move(next);
    out.vertices.erase(victim);
  }

  std::sort(out.edges.begin(), out.edges.end(),
            [](const ContractedEdge& a, const ContractedEdge& b) {
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  return out;
}

// Exhaustive, duplicate-free list of kind-preserving graph isomorphisms.
inline std::vector<Isomorphism> enumerate_isomorphisms(const ContractedGraph& g1,
                                                       const ContractedGraph& g2) {
  if (g1.vertices.size() > kEnumerationGuard || g2.vertices.size() > kEnumerationGuard)
    fail(errc::size_guard, "enumerate_isomorphisms is limited to " +
                               std::to_string(kEnumerationGuard) + " vertices");
  std::vector<Isomorphism> found;
  if (g1.vertices.size() != g2.vertices.size() || g1.edges.size() != g2.edges.size())
    return found;
  if (g1.vertices.empty()) {
    found.push_back(Isomorphism{});
    return found;
  }

  std::vector<VertexId> ids1, ids2;
  for (const auto& [id, p] : g1.vertices) ids1.push_back(id);
  for (const auto& [id, p] : g2.vertices) ids2.push_back(id);

  std::map<std::pair<VertexId, VertexId>, const ContractedEdge*> e1, e2;
  for (const ContractedEdge& e : g1.edges) e1[{e.u, e.v}] = &e;
  for (const ContractedEdge& e : g2.edges) e2[{e.u, e.v}] = &e;

  std::vector<std::size_t> perm(ids2.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::map<VertexId, VertexId> vm;
    for (std::size_t i = 0; i < ids1.size(); ++i) vm[ids1[i]] = ids2[perm[i]];
    bool ok = true;
    for (const auto& [key, e] : e1) {
      const auto it = e2.find(normalized_edge(vm.at(key.first), vm.at(key.second)));
      if (it == e2.end() || it->second->marked != e->marked) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& [key, e] : e2) {
        // reverse direction: images of non-adjacent vertices must stay non-adjacent
        bool covered = false;
        for (const auto& [k1, f] : e1) {
          if (normalized_edge(vm.at(k1.first), vm.at(k1.second)) == key) {
            covered = true;
            break;
          }
        }
        if (!covered) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      Isomorphism iso;
      iso.vertex_map = vm;
      const auto idx2 = edge_index(g2);
      for (const ContractedEdge& e : g1.edges) {
        const VertexId& iu = vm.at(e.u);
        const VertexId& iv = vm.at(e.v);
        iso.edge_image.push_back(idx2.at(normalized_edge(iu, iv)));
        iso.edge_flipped.push_back(iu > iv);
      }
      found.push_back(std::move(iso));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

// min over enumerated isomorphisms of max(vertex displacements, oriented
// curve distances); UNDEFINED when no isomorphism exists.
inline ExtendedDistance brute_force_frechet(const EmbeddedGraph& g1, const EmbeddedGraph& g2) {
  const ContractedGraph c1 = reference_contraction(g1);
  const ContractedGraph c2 = reference_contraction(g2);
  const std::vector<Isomorphism> isos = enumerate_isomorphisms(c1, c2);
  if (isos.empty()) return ExtendedDistance::undefined();

  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, double>> curve_cache;
  auto curve_value = [&](std::size_t i, std::size_t j, bool flipped) {
    auto it = curve_cache.find({i, j});
    if (it == curve_cache.end()) {
      const double f = curve_frechet(c1.edges[i].curve, c2.edges[j].curve);
      const double r = curve_frechet(c1.edges[i].curve, c2.edges[j].curve.reversed());
      it = curve_cache.emplace(std::pair{i, j}, std::pair{f, r}).first;
    }
    return flipped ? it->second.second : it->second.first;
  };

  double best = std::numeric_limits<double>::infinity();
  for (const Isomorphism& iso : isos) {
    double cost = 0.0;
    for (const auto& [a, b] : iso.vertex_map)
      cost = std::max(cost, point_distance(c1.vertices.at(a), c2.vertices.at(b)));
    for (std::size_t e = 0; e < c1.edges.size(); ++e)
      cost = std::max(cost, curve_value(e, iso.edge_image[e], iso.edge_flipped[e]));
    best = std::min(best, cost);
  }
  return ExtendedDistance::finite(best);
}

// min over all permutations of the max selected entry
inline std::optional<double> brute_force_bottleneck(const WeightMatrix& w) {
  if (w.rows() != w.cols()) return std::nullopt;
  if (w.rows() > kBottleneckGuard)
    fail(errc::size_guard,
         "brute_force_bottleneck is limited to " + std::to_string(kBottleneckGuard) + "x" +
             std::to_string(kBottleneckGuard));
  if (w.rows() == 0) return 0.0;
  std::vector<std::size_t> perm(w.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<double> best;
  do {
    double m = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const ExtendedDistance& e = w.at(i, perm[i]);
      if (!e.defined()) {
        ok = false;
        break;
      }
      m = std::max(m, e.value());
    }
    if (ok && (!best || m < *best)) best = m;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Independent oracle for the geometry module: bisection over the decision
// procedure, starting from the max pairwise vertex distance (an upper bound
// by convexity).
inline double bisection_curve_frechet(const Polyline& p, const Polyline& q, double tol) {
  if (tol <= 0.0) fail(errc::negative_delta, "bisection_curve_frechet: tol must be positive");
  double hi = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      hi = std::max(hi, point_distance(p[i], q[j]));
  if (frechet_decision(p, q, 0.0)) return 0.0;
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (frechet_decision(p, q, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// --- seeded instance generation -------------------------------------------

struct InstanceSpec {
  enum class Kind { random_tree, random_graph, perturbed_copy };

  Kind kind = Kind::random_tree;
  int vertex_count = 0;
  int degree_bound = 3;
  double epsilon = 0.0;    // perturbed_copy: per-vertex displacement bound
  std::uint64_t seed = 0;
  int dimension = 2;
  int subdivisions = 0;    // edges to split into degree-2 chains
  int extra_edges = -1;    // random_graph: chords to add; -1 = vertex_count / 4
};

namespace detail {

// std::mt19937_64 is fully specified; the distributions below avoid the
// implementation-defined standard ones so outputs are byte-identical across
// platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

private:
  std::mt19937_64 eng_;
};

inline VertexId make_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "v%05zu", i);
  return buf;
}

inline Point random_point(Rng& rng, int dim) {
  std::vector<double> c(dim);
  for (double& x : c) x = rng.uniform01();
  return Point(std::move(c));
}

// uniform random recursive tree restricted to parents below the degree bound
inline EmbeddedGraph random_tree(Rng& rng, int n, int degree_bound, int dim) {
  if (n < 1) fail(errc::infeasible_spec, "vertex count must be at least 1");
  if (n >= 2 && degree_bound < 1) fail(errc::infeasible_spec, "degree bound rules out any edge");
  EmbeddedGraph g;
  std::vector<std::size_t> degree(n, 0);
  for (int i = 0; i < n; ++i) g.vertices.emplace(make_id(i), random_point(rng, dim));
  for (int i = 1; i < n; ++i) {
    std::vector<int> eligible;
    for (int j = 0; j < i; ++j)
      if (static_cast<int>(degree[j]) < degree_bound) eligible.push_back(j);
    if (eligible.empty())
      fail(errc::infeasible_spec, "degree bound " + std::to_string(degree_bound) +
                                      " cannot accommodate " + std::to_string(n) + " vertices");
    const int parent = eligible[rng.below(eligible.size())];
    g.edges.push_back({make_id(parent), make_id(i)});
    ++degree[parent];
    ++degree[i];
  }
  return g;
}

// splits `passes` random edges into chains of 1-3 new degree-2 vertices
// placed along the segment with a small perpendicular jitter
inline void subdivide_edges(Rng& rng, EmbeddedGraph& g, int passes) {
  std::size_t next_id = g.vertices.size() + 100000;  // distinct id range
  for (int pass = 0; pass < passes; ++pass) {
    if (g.edges.empty()) return;
    const std::size_t pick = rng.below(g.edges.size());
    const auto [ua, vb] = g.edges[pick];
    const Point pu = g.vertices.at(ua);
    const Point pv = g.vertices.at(vb);
    const int count = 1 + static_cast<int>(rng.below(3));
    std::vector<double> fractions;
    for (int k = 0; k < count; ++k) fractions.push_back(rng.uniform(0.05, 0.95));
    std::sort(fractions.begin(), fractions.end());

    g.edges.erase(g.edges.begin() + static_cast<std::ptrdiff_t>(pick));
    VertexId prev = ua;
    const double seg = point_distance(pu, pv);
    for (double f : fractions) {
      std::vector<double> c(pu.dimension());
      for (std::size_t d = 0; d < c.size(); ++d)
        c[d] = pu[d] + f * (pv[d] - pu[d]) + rng.uniform(-0.02, 0.02) * seg;
      const VertexId id = make_id(next_id++);
      g.vertices.emplace(id, Point(std::move(c)));
      g.edges.push_back({prev, id});
      prev = id;
    }
    g.edges.push_back({prev, vb});
  }
}

// Chords are kept only when the graph stays contractible: a cycle whose
// vertices are not all degree 2 needs at least three branch points on it,
// otherwise contraction would produce a self-loop or parallel edges.
inline EmbeddedGraph random_graph(Rng& rng, const InstanceSpec& spec) {
  const int extras = spec.extra_edges >= 0 ? spec.extra_edges : spec.vertex_count / 4;
  EmbeddedGraph g = random_tree(rng, spec.vertex_count, spec.degree_bound, spec.dimension);
  std::map<VertexId, int> degree;
  std::set<std::pair<VertexId, VertexId>> present;
  for (const auto& [a, b] : g.edges) {
    ++degree[a];
    ++degree[b];
    present.insert(normalized_edge(a, b));
  }
  int added = 0;
  for (int tries = 0; tries < 8 * extras + 8 && added < extras; ++tries) {
    const std::size_t i = rng.below(g.vertices.size());
    const std::size_t j = rng.below(g.vertices.size());
    if (i == j) continue;
    const VertexId a = make_id(std::min(i, j)), b = make_id(std::max(i, j));
    if (present.count({a, b})) continue;
    if (degree[a] >= spec.degree_bound || degree[b] >= spec.degree_bound) continue;
    g.edges.push_back({a, b});
    try {
      contract_degree2(g);
    } catch (const error&) {
      g.edges.pop_back();
      continue;
    }
    present.insert({a, b});
    ++degree[a];
    ++degree[b];
    ++added;
  }
  if (spec.subdivisions > 0) subdivide_edges(rng, g, spec.subdivisions);
  try {
    contract_degree2(g);
  } catch (const error&) {
    fail(errc::infeasible_spec, "could not generate a contractible random graph");
  }
  return g;
}

inline Point jitter_within(Rng& rng, const Point& p, double eps) {
  if (eps <= 0.0) return p;
  const std::size_t dim = p.dimension();
  std::vector<double> dir(dim);
  while (true) {  // rejection-sample a direction in the unit ball
    double norm2 = 0.0;
    for (double& x : dir) {
      x = rng.uniform(-1.0, 1.0);
      norm2 += x * x;
    }
    if (norm2 <= 1.0 && norm2 > 0.0) break;
  }
  const double radius = eps * rng.uniform01();
  std::vector<double> c(dim);
  for (std::size_t d = 0; d < dim; ++d) c[d] = p[d] + radius * dir[d];
  return Point(std::move(c));
}

}  // namespace detail

// Deterministic instance for the given spec. perturbed_copy specs go through
// gen_instance_pair instead.
inline EmbeddedGraph gen_instance(const InstanceSpec& spec) {
  if (spec.vertex_count < 1) fail(errc::infeasible_spec, "vertex count must be at least 1");
  if (spec.dimension < 1) fail(errc::infeasible_spec, "dimension must be at least 1");
  detail::Rng rng(spec.seed);
  switch (spec.kind) {
    case InstanceSpec::Kind::random_tree: {
      EmbeddedGraph g = detail::random_tree(rng, spec.vertex_count, spec.degree_bound,
                                            spec.dimension);
      if (spec.subdivisions > 0) detail::subdivide_edges(rng, g, spec.subdivisions);
      return g;
    }
    case InstanceSpec::Kind::random_graph:
      return detail::random_graph(rng, spec);
    case InstanceSpec::Kind::perturbed_copy:
      fail(errc::infeasible_spec, "perturbed_copy specs produce pairs; use gen_instance_pair");
  }
  fail(errc::internal_error, "unreachable");
}

// (G, G') where G' applies an isomorphic relabeling and a per-vertex
// displacement of at most epsilon. The underlying identity witness keeps the
// oracle distance at most epsilon.
inline std::pair<EmbeddedGraph, EmbeddedGraph> gen_instance_pair(const InstanceSpec& spec) {
  if (spec.kind != InstanceSpec::Kind::perturbed_copy)
    fail(errc::infeasible_spec, "gen_instance_pair needs a perturbed_copy spec");
  if (spec.vertex_count < 1) fail(errc::infeasible_spec, "vertex count must be at least 1");
  detail::Rng rng(spec.seed);
  EmbeddedGraph base =
      detail::random_tree(rng, spec.vertex_count, spec.degree_bound, spec.dimension);
  if (spec.subdivisions > 0) detail::subdivide_edges(rng, base, spec.subdivisions);

  std::vector<VertexId> ids;
  for (const auto& [id, p] : base.vertices) ids.push_back(id);
  std::vector<std::size_t> perm(ids.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);

  std::map<VertexId, VertexId> relabel;
  for (std::size_t i = 0; i < ids.size(); ++i) relabel[ids[i]] = ids[perm[i]];

  EmbeddedGraph copy;
  for (const VertexId& id : ids)
    copy.vertices.emplace(relabel.at(id), detail::jitter_within(rng, base.vertices.at(id),
                                                                spec.epsilon));
  for (const auto& [a, b] : base.edges) copy.edges.push_back({relabel.at(a), relabel.at(b)});
  return {std::move(base), std::move(copy)};
}

}  // namespace frechet::oracle
