#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "frechet/oracle.hpp"
#include "frechet/tree_frechet.hpp"

#include "test_util.hpp"

using namespace frechet;

namespace {

EmbeddedGraph path(const std::vector<std::pair<VertexId, Point>>& vs) {
  EmbeddedGraph g;
  for (const auto& [id, p] : vs) g.vertices.emplace(id, p);
  for (std::size_t i = 1; i < vs.size(); ++i) g.edges.push_back({vs[i - 1].first, vs[i].first});
  return g;
}

EmbeddedGraph star(const Point& hub, const std::vector<Point>& leaves) {
  EmbeddedGraph g;
  g.vertices.emplace("hub", hub);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const VertexId id = "leaf" + std::to_string(i);
    g.vertices.emplace(id, leaves[i]);
    g.edges.push_back({"hub", id});
  }
  return g;
}

EmbeddedGraph translated(const EmbeddedGraph& g, double tx, double ty) {
  EmbeddedGraph out = g;
  for (auto& [id, p] : out.vertices) p = Point{p[0] + tx, p[1] + ty};
  return out;
}

// independent pairs and perturbed copies, like the acceptance mix
std::pair<EmbeddedGraph, EmbeddedGraph> random_pair(int it, bool perturbed) {
  oracle::InstanceSpec spec;
  spec.degree_bound = 4;
  spec.seed = 50000 + static_cast<std::uint64_t>(it);
  if (perturbed) {
    spec.kind = oracle::InstanceSpec::Kind::perturbed_copy;
    spec.vertex_count = 2 + it % 7;
    spec.epsilon = 0.05 * (it % 4);
    spec.subdivisions = it % 3;
    return oracle::gen_instance_pair(spec);
  }
  spec.kind = oracle::InstanceSpec::Kind::random_tree;
  spec.vertex_count = 1 + it % 8;
  spec.subdivisions = it % 2;
  EmbeddedGraph a = oracle::gen_instance(spec);
  spec.seed += 100000;
  spec.vertex_count = 1 + (it * 7 + 3) % 8;
  EmbeddedGraph b = oracle::gen_instance(spec);
  return {std::move(a), std::move(b)};
}

}  // namespace

TEST_CASE("root_tree annotations") {
  const ContractedGraph c = contract_degree2(
      path({{"a", Point{0, 0}}, {"b", Point{1, 0}}, {"c", Point{2, 0}}}), {"a", "b", "c"});
  const RootedTree t = root_tree(c, "a");
  REQUIRE(t.size() == 3);
  // ids sorted: a=0, b=1, c=2
  CHECK(t.depth == std::vector<int>{0, 1, 2});
  CHECK(t.height == std::vector<int>{2, 1, 0});
  CHECK(t.parent[0] == -1);
  CHECK(t.parent[2] == 1);

  const ContractedGraph s = contract_degree2(
      star(Point{0, 0}, {Point{1, 0}, Point{0, 1}, Point{-1, 0}}));
  const RootedTree st = root_tree(s, "hub");
  for (std::size_t v = 0; v < st.size(); ++v)
    CHECK(st.depth[v] == (st.ids[v] == "hub" ? 0 : 1));

  EmbeddedGraph single;
  single.vertices.emplace("a", Point{0, 0});
  const RootedTree one = root_tree(contract_degree2(single), "a");
  CHECK(one.height[one.root] == 0);

  ContractedGraph cyc;
  cyc.vertices = {{"a", Point{0, 0}}, {"b", Point{1, 0}}, {"c", Point{0, 1}}};
  cyc.edges = {{"a", "b", Polyline{Point{0, 0}, Point{1, 0}}, false},
               {"a", "c", Polyline{Point{0, 0}, Point{0, 1}}, false},
               {"b", "c", Polyline{Point{1, 0}, Point{0, 1}}, false}};
  CHECK_THROWS_AS(root_tree(cyc, "a"), error);
}

TEST_CASE("subtree distance base cases") {
  // two leaves: plain point distance
  EmbeddedGraph a = path({{"r", Point{0, 0}}, {"x", Point{0, 1}}});
  EmbeddedGraph b = path({{"r", Point{3, 4}}, {"x", Point{3, 5}}});
  const ContractedGraph ca = contract_degree2(a), cb = contract_degree2(b);
  const EdgeCurveTable table = edge_curve_table(ca, cb);
  const RootedTree ta = root_tree(ca, "x"), tb = root_tree(cb, "x");
  DpTable dp(ta, tb);
  const int leaf_a = ta.children[ta.root][0];
  const int leaf_b = tb.children[tb.root][0];
  const ExtendedDistance d = subtree_distance(ta, leaf_a, tb, leaf_b, dp, table);
  REQUIRE(d.defined());
  CHECK(d.value() == 5.0);
}

TEST_CASE("subtree distance with a figure-style weight table") {
  // children of u pair up 1-apart with their copies and ~10 apart otherwise,
  // so the bottleneck matching value is exactly 1
  EmbeddedGraph a = star(Point{0, 0}, {Point{5, 0}, Point{0, 5}, Point{-5, 0}});
  EmbeddedGraph b = star(Point{0, 0}, {Point{5, 1}, Point{0, 6}, Point{-5, 1}});
  const TreeFrechetResult r = tree_frechet_rooted(a, b, "hub", "hub");
  REQUIRE(r.distance.defined());
  CHECK(r.distance.value() == 1.0);

  // child counts 2 vs 3: non-isomorphic
  EmbeddedGraph two = star(Point{0, 0}, {Point{1, 0}, Point{0, 1}});
  CHECK(!tree_frechet_rooted(two, b, "hub", "hub").distance.defined());
}

TEST_CASE("dp lookups outside the level schedule are ordering bugs") {
  // equal heights and child counts at unequal depths: the child lookup below
  // has no dp slot and must fail loudly
  EmbeddedGraph a;
  a.vertices = {{"r", Point{0, 0}}, {"x", Point{1, 0}}, {"y", Point{0, 1}}, {"z", Point{0, 2}}};
  a.edges = {{"r", "x"}, {"r", "y"}, {"y", "z"}};
  EmbeddedGraph b;
  b.vertices = {{"r", Point{0, 0}}, {"c", Point{0, 1}}};
  b.edges = {{"r", "c"}};
  const ContractedGraph ca = contract_degree2(a, {"r", "y"}), cb = contract_degree2(b, {"r"});
  const RootedTree ta = root_tree(ca, "r"), tb = root_tree(cb, "r");
  const EdgeCurveTable table = edge_curve_table(ca, cb);
  DpTable dp(ta, tb);
  int y = -1;
  for (std::size_t v = 0; v < ta.size(); ++v)
    if (ta.ids[v] == "y") y = static_cast<int>(v);
  REQUIRE(y >= 0);
  try {
    subtree_distance(ta, y, tb, tb.root, dp, table);
    FAIL("expected error");
  } catch (const error& e) {
    CHECK(e.code() == errc::missing_dp_entry);
  }
}

TEST_CASE("witness extraction requires a finite root entry") {
  EmbeddedGraph a;
  a.vertices = {{"r", Point{0, 0}}, {"x", Point{1, 0}}};
  a.edges = {{"r", "x"}};
  EmbeddedGraph b;
  b.vertices = {{"r", Point{0, 0}}, {"x", Point{1, 0}}, {"y", Point{0, 1}}};
  b.edges = {{"r", "x"}, {"r", "y"}};
  const ContractedGraph ca = contract_degree2(a, {"r"}), cb = contract_degree2(b, {"r"});
  const RootedTree ta = root_tree(ca, "r"), tb = root_tree(cb, "r");
  DpTable dp(ta, tb);  // left unfilled: root entry undefined
  try {
    extract_isomorphism(ta, tb, dp);
    FAIL("expected error");
  } catch (const error& e) {
    CHECK(e.code() == errc::undefined_witness);
  }
}

TEST_CASE("rooted tree frechet examples") {
  EmbeddedGraph a = path({{"r", Point{0, 0}}, {"c", Point{1, 0}}});
  const TreeFrechetResult same = tree_frechet_rooted(a, a, "r", "r");
  REQUIRE(same.distance.defined());
  CHECK(same.distance.value() == 0.0);
  REQUIRE(same.witness.has_value());
  for (const auto& [x, y] : same.witness->vertex_map) CHECK(x == y);

  EmbeddedGraph b = path({{"r", Point{0, 0}}, {"c", Point{0, 1}}});
  const TreeFrechetResult diag = tree_frechet_rooted(a, b, "r", "r");
  REQUIRE(diag.distance.defined());
  CHECK(diag.distance.value() == std::sqrt(2.0));

  const EmbeddedGraph p4 = path(
      {{"a", Point{0, 0}}, {"b", Point{1, 0}}, {"c", Point{2, 0}}, {"d", Point{3, 0}}});
  const EmbeddedGraph s4 = star(Point{0, 0}, {Point{1, 0}, Point{0, 1}, Point{-1, 0}});
  CHECK(!tree_frechet_rooted(p4, s4, "a", "hub").distance.defined());
}

TEST_CASE("a degree-2 root survives thanks to protection") {
  const EmbeddedGraph p3 = path({{"a", Point{0, 0}}, {"b", Point{1, 0}}, {"c", Point{2, 0}}});
  const TreeFrechetResult r = tree_frechet_rooted(p3, p3, "b", "b");
  REQUIRE(r.distance.defined());
  CHECK(r.distance.value() == 0.0);
  CHECK(r.witness->vertex_map.size() == 3);
}

TEST_CASE("unrooted tree frechet examples") {
  const EmbeddedGraph p4 = path(
      {{"a", Point{0, 0}}, {"b", Point{1, 0}}, {"c", Point{2, 0}}, {"d", Point{3, 0}}});
  const TreeFrechetResult same = tree_frechet_unrooted(p4, p4);
  REQUIRE(same.distance.defined());
  CHECK(same.distance.value() == 0.0);

  // centers of the contracted 3-path are its two leaves; both pairings tried
  const EmbeddedGraph p3 = path({{"a", Point{0, 0}}, {"b", Point{1, 0}}, {"c", Point{2, 0}}});
  const TreeFrechetResult moved = tree_frechet_unrooted(p3, translated(p3, 0, 1));
  REQUIRE(moved.distance.defined());
  CHECK(moved.distance.value() == 1.0);

  // one center vs two centers
  const EmbeddedGraph s = star(Point{0, 0}, {Point{1, 0}, Point{0, 1}, Point{-1, 0}});
  CHECK(!tree_frechet_unrooted(s, p4).distance.defined());

  CHECK_THROWS_AS(tree_frechet_unrooted(p4, EmbeddedGraph{}), error);
}

TEST_CASE("witness maps swapped twin leaves onto the cheaper twin") {
  EmbeddedGraph a = star(Point{0, 0}, {Point{1, 0}, Point{-1, 0}});
  EmbeddedGraph b = star(Point{0, 0}, {Point{1, 0.1}, Point{-1, 0}});
  const TreeFrechetResult r = tree_frechet_rooted(a, b, "hub", "hub");
  REQUIRE(r.distance.defined());
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->vertex_map.at("leaf0") == "leaf0");
  CHECK(r.witness->vertex_map.at("leaf1") == "leaf1");
  CHECK(r.distance.value() == doctest::Approx(0.1));
}

TEST_CASE("tree solver equals the brute-force oracle") {
  int defined_count = 0;
  for (int it = 0; it < 120; ++it) {
    const auto [a, b] = random_pair(it, it % 2 == 0);
    const TreeFrechetResult fast = tree_frechet_unrooted(a, b);
    const ExtendedDistance slow = oracle::brute_force_frechet(a, b);
    CHECK(fast.distance == slow);
    if (fast.distance.defined()) {
      ++defined_count;
      // witness realizability: the map attains exactly the reported value
      const ContractedGraph c1 = contract_degree2(a), c2 = contract_degree2(b);
      const EdgeCurveTable table = edge_curve_table(c1, c2);
      REQUIRE(fast.witness.has_value());
      CHECK(realized_cost(*fast.witness, c1, c2, table) == fast.distance.value());
    }
  }
  CHECK(defined_count > 20);  // the mix actually exercises finite cases
}

TEST_CASE("metric sanity") {
  for (int it = 0; it < 40; ++it) {
    const auto [a, b] = random_pair(it, it % 3 != 0);
    // identity
    CHECK(tree_frechet_unrooted(a, a).distance.value() == 0.0);
    // symmetry, exact
    CHECK(tree_frechet_unrooted(a, b).distance == tree_frechet_unrooted(b, a).distance);
  }
}

TEST_CASE("perturbed copies stay within epsilon") {
  for (int it = 0; it < 30; ++it) {
    oracle::InstanceSpec spec;
    spec.kind = oracle::InstanceSpec::Kind::perturbed_copy;
    spec.vertex_count = 2 + it % 8;
    spec.epsilon = 0.01 * (it % 5);
    spec.seed = 777 + static_cast<std::uint64_t>(it);
    const auto [a, b] = oracle::gen_instance_pair(spec);
    const TreeFrechetResult r = tree_frechet_unrooted(a, b);
    REQUIRE(r.distance.defined());
    CHECK(r.distance.value() <= spec.epsilon + 1e-12);
  }
}

TEST_CASE("distance is 1-Lipschitz under vertex displacement") {
  testutil::Rng rng(31337);
  for (int it = 0; it < 25; ++it) {
    const auto [a, b] = random_pair(it, true);
    const double base = tree_frechet_unrooted(a, b).distance.value();
    const double eps = rng.uniform(0.0, 0.2);
    EmbeddedGraph moved = b;
    for (auto& [id, p] : moved.vertices) {
      const double angle = rng.uniform(0, 6.28318);
      const double len = rng.uniform(0, eps);
      p = Point{p[0] + len * std::cos(angle), p[1] + len * std::sin(angle)};
    }
    const TreeFrechetResult r = tree_frechet_unrooted(a, moved);
    REQUIRE(r.distance.defined());
    CHECK(std::abs(r.distance.value() - base) <= eps + 1e-9);
  }
}

TEST_CASE("rooted results respect the root distance lower bound") {
  for (int it = 0; it < 20; ++it) {
    oracle::InstanceSpec spec;
    spec.kind = oracle::InstanceSpec::Kind::perturbed_copy;
    spec.vertex_count = 2 + it % 6;
    spec.epsilon = 0.3;
    spec.seed = 31000 + static_cast<std::uint64_t>(it);
    const auto [a, b] = oracle::gen_instance_pair(spec);
    const ContractedGraph ca = contract_degree2(a), cb = contract_degree2(b);
    const VertexId ra = ca.vertices.begin()->first;
    const VertexId rb = cb.vertices.begin()->first;
    const TreeFrechetResult r = tree_frechet_rooted(a, b, ra, rb);
    if (r.distance.defined())
      CHECK(r.distance.value() >=
            point_distance(a.vertices.at(ra), b.vertices.at(rb)) - 1e-12);
  }
}
