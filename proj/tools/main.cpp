// gfd: Frechet distances between embedded graphs.
//
// Subcommands: curve | tree | graph | gen | bench. Exit codes: 0 finite
// result, 2 parse/validation/usage errors, 3 undefined result, 4 size guard.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frechet/frechet.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitUndefined = 3;
constexpr int kExitGuard = 4;

std::string format_distance(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Report {
  std::string mode;
  frechet::ExtendedDistance result;
  std::optional<frechet::Isomorphism> witness;
  frechet::PhaseTimings timings;
  bool want_witness = false;
};

void print_report(const Report& r, const std::string& format) {
  if (format == "json") {
    nlohmann::json j;
    j["mode"] = r.mode;
    if (r.result.defined())
      j["result"] = r.result.value();
    else
      j["result"] = "undefined";
    if (r.want_witness && r.witness) {
      nlohmann::json vm = nlohmann::json::object();
      for (const auto& [a, b] : r.witness->vertex_map) vm[a] = b;
      j["witness"] = {{"vertex_map", vm}};
    }
    j["timings_ms"] = {{"contraction", r.timings.contraction_ms},
                       {"table", r.timings.table_ms},
                       {"solve", r.timings.solve_ms}};
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << "mode: " << r.mode << "\n";
  if (r.result.defined())
    std::cout << "result: " << format_distance(r.result.value()) << "\n";
  else
    std::cout << "result: undefined\n";
  std::printf("timings_ms: contraction=%.3f table=%.3f solve=%.3f\n", r.timings.contraction_ms,
              r.timings.table_ms, r.timings.solve_ms);
  if (r.want_witness && r.witness) {
    std::cout << "witness:\n";
    for (const auto& [a, b] : r.witness->vertex_map) std::cout << "  " << a << " -> " << b << "\n";
  }
}

int finish(const Report& r, const std::string& format) {
  print_report(r, format);
  return r.result.defined() ? kExitOk : kExitUndefined;
}

// a path graph ordered from its root endpoint (or the smaller leaf)
frechet::Polyline polyline_of_path(const frechet::EmbeddedGraph& g) {
  using namespace frechet;
  validate(g);
  if (g.vertices.size() < 2) fail(errc::not_a_tree, "curve input needs at least 2 vertices");
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<VertexId> leaves;
  for (const auto& [id, p] : g.vertices) {
    const std::size_t d = adj.count(id) ? adj.at(id).size() : 0;
    if (d > 2 || d == 0) fail(errc::not_a_tree, "curve input must be a path graph");
    if (d == 1) leaves.push_back(id);
  }
  if (leaves.size() != 2 || g.edges.size() + 1 != g.vertices.size())
    fail(errc::not_a_tree, "curve input must be a path graph");

  VertexId start = std::min(leaves[0], leaves[1]);
  if (g.root) {
    if (*g.root != leaves[0] && *g.root != leaves[1])
      fail(errc::not_a_tree, "root of a curve input must be a path endpoint");
    start = *g.root;
  }
  std::vector<Point> pts{g.vertices.at(start)};
  VertexId prev = start, cur = adj.at(start)[0];
  while (true) {
    pts.push_back(g.vertices.at(cur));
    const auto& nb = adj.at(cur);
    if (nb.size() == 1) break;
    const VertexId next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  return Polyline(std::move(pts));
}

int run_curve(const std::string& file1, const std::string& file2, const std::string& format) {
  using namespace frechet;
  const EmbeddedGraph g1 = load_graph_file(file1);
  const EmbeddedGraph g2 = load_graph_file(file2);
  const Polyline p = polyline_of_path(g1);
  const Polyline q = polyline_of_path(g2);
  Report r;
  r.mode = "curve";
  const auto t0 = std::chrono::steady_clock::now();
  r.result = ExtendedDistance::finite(curve_frechet(p, q));
  r.timings.solve_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return finish(r, format);
}

int run_tree(const std::string& file1, const std::string& file2, const std::string& format,
             bool witness) {
  using namespace frechet;
  const EmbeddedGraph g1 = load_graph_file(file1);
  const EmbeddedGraph g2 = load_graph_file(file2);
  if (g1.root.has_value() != g2.root.has_value())
    fail(errc::parse_error, "either both or neither tree file may carry a root");
  Report r;
  r.mode = "tree";
  r.want_witness = witness;
  TreeFrechetResult res = g1.root ? tree_frechet_rooted(g1, g2, *g1.root, *g2.root, &r.timings)
                                  : tree_frechet_unrooted(g1, g2, &r.timings);
  r.result = res.distance;
  r.witness = std::move(res.witness);
  return finish(r, format);
}

int run_graph(const std::string& file1, const std::string& file2, const std::string& format,
              bool witness, std::size_t guard) {
  using namespace frechet;
  const EmbeddedGraph g1 = load_graph_file(file1);
  const EmbeddedGraph g2 = load_graph_file(file2);
  Report r;
  r.mode = "graph";
  r.want_witness = witness;
  GraphFrechetResult res = graph_frechet(g1, g2, &r.timings, guard);
  r.result = res.distance;
  r.witness = std::move(res.witness);
  return finish(r, format);
}

int run_gen(const std::string& kind, int n, int degree, double eps, std::uint64_t seed,
            int subdivide, int dim, int extra_edges, const std::vector<std::string>& outputs) {
  using namespace frechet;
  oracle::InstanceSpec spec;
  spec.vertex_count = n;
  spec.degree_bound = degree;
  spec.epsilon = eps;
  spec.seed = seed;
  spec.subdivisions = subdivide;
  spec.dimension = dim;
  spec.extra_edges = extra_edges;
  if (kind == "tree") {
    spec.kind = oracle::InstanceSpec::Kind::random_tree;
  } else if (kind == "graph") {
    spec.kind = oracle::InstanceSpec::Kind::random_graph;
  } else if (kind == "pair") {
    spec.kind = oracle::InstanceSpec::Kind::perturbed_copy;
  } else {
    fail(errc::infeasible_spec, "unknown kind '" + kind + "'");
  }
  if (spec.kind == oracle::InstanceSpec::Kind::perturbed_copy) {
    if (outputs.size() != 2) fail(errc::infeasible_spec, "kind 'pair' needs two output paths");
    const auto [a, b] = oracle::gen_instance_pair(spec);
    save_graph_file(a, outputs[0]);
    save_graph_file(b, outputs[1]);
  } else {
    if (outputs.size() != 1) fail(errc::infeasible_spec, "this kind needs one output path");
    save_graph_file(oracle::gen_instance(spec), outputs[0]);
  }
  for (const std::string& o : outputs) std::cout << o << "\n";
  return kExitOk;
}

int run_bench(const std::vector<std::size_t>& sizes, std::uint64_t seed, int degree, double eps,
              const std::string& format) {
  using namespace frechet;
  const BenchReport report = run_tree_bench(sizes, seed, degree, eps);
  if (format == "json") {
    nlohmann::json j;
    j["mode"] = "bench";
    j["rows"] = nlohmann::json::array();
    for (const BenchRow& row : report.rows)
      j["rows"].push_back({{"n", row.n}, {"ms", row.millis}, {"result", row.result}});
    j["slope"] = report.slope;
    std::cout << j.dump() << "\n";
  } else {
    std::printf("%8s %12s %14s\n", "n", "ms", "result");
    for (const BenchRow& row : report.rows)
      std::printf("%8zu %12.2f %14s\n", row.n, row.millis, format_distance(row.result).c_str());
    std::printf("slope: %.3f\n", report.slope);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frechet distance between straight-line embedded graphs"};
  app.require_subcommand(1);

  std::string file1, file2;
  std::string format = "text";
  bool witness = false;
  std::size_t guard = 64;

  auto* curve = app.add_subcommand("curve", "Frechet distance between two polyline files");
  curve->add_option("file1", file1, "first path-graph file")->required();
  curve->add_option("file2", file2, "second path-graph file")->required();
  curve->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* tree = app.add_subcommand("tree", "Frechet distance between two embedded trees");
  tree->add_option("file1", file1, "first tree file")->required();
  tree->add_option("file2", file2, "second tree file")->required();
  tree->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  tree->add_flag("--witness", witness, "print the witness isomorphism");

  auto* graph = app.add_subcommand("graph", "Frechet distance between two embedded graphs");
  graph->add_option("file1", file1, "first graph file")->required();
  graph->add_option("file2", file2, "second graph file")->required();
  graph->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  graph->add_flag("--witness", witness, "print the witness isomorphism");
  graph->add_option("--guard", guard, "max contracted vertices accepted (exit 4 beyond)");

  std::string kind = "tree";
  int n = 0, degree = 3, subdivide = 0, dim = 2, extra_edges = -1;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  auto* gen = app.add_subcommand("gen", "generate seeded instances");
  gen->add_option("--kind", kind, "tree|graph|pair")
      ->check(CLI::IsMember({"tree", "graph", "pair"}));
  gen->add_option("-n,--vertices", n, "vertex count")->required();
  gen->add_option("--degree", degree, "degree bound");
  gen->add_option("--eps", eps, "perturbation radius for kind=pair");
  gen->add_option("--seed", seed, "rng seed");
  gen->add_option("--subdivide", subdivide, "edges to split into degree-2 chains");
  gen->add_option("--dim", dim, "embedding dimension");
  gen->add_option("--extra-edges", extra_edges, "chords for kind=graph (-1: n/4)");
  gen->add_option("outputs", outputs, "output file(s); two for kind=pair")->required();

  std::vector<std::size_t> sizes{256, 512, 1024, 2048};
  auto* bench = app.add_subcommand("bench", "tree solver scaling on perturbed-copy instances");
  bench->add_option("--sizes", sizes, "instance sizes")->delimiter(',');
  bench->add_option("--seed", seed, "rng seed");
  bench->add_option("--degree", degree, "degree bound");
  bench->add_option("--eps", eps, "perturbation radius");
  bench->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (curve->parsed()) return run_curve(file1, file2, format);
    if (tree->parsed()) return run_tree(file1, file2, format, witness);
    if (graph->parsed()) return run_graph(file1, file2, format, witness, guard);
    if (gen->parsed())
      return run_gen(kind, n, degree, eps, seed, subdivide, dim, extra_edges, outputs);
    if (bench->parsed()) {
      if (eps == 0.0) eps = 0.01;
      return run_bench(sizes, seed, degree, eps, format);
    }
  } catch (const frechet::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == frechet::errc::size_guard ? kExitGuard : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
