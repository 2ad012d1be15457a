#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "frechet/frechet.hpp"

using namespace frechet;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "gfd_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const std::string cmd =
      std::string(GFD_CLI_PATH) + " " + args + " > " + out.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  return r;
}

std::string write_graph(const std::string& name, const EmbeddedGraph& g) {
  const fs::path p = work_dir() / name;
  save_graph_file(g, p.string());
  return p.string();
}

EmbeddedGraph path3(double dy = 0.0, bool rooted = false) {
  EmbeddedGraph g;
  g.vertices = {{"a", Point{0, dy}}, {"b", Point{1, dy}}, {"c", Point{2, dy}}};
  g.edges = {{"a", "b"}, {"b", "c"}};
  if (rooted) g.root = "a";
  return g;
}

EmbeddedGraph star4() {
  EmbeddedGraph g;
  g.vertices = {{"hub", Point{0, 0}}, {"l0", Point{1, 0}}, {"l1", Point{0, 1}},
                {"l2", Point{-1, 0}}};
  g.edges = {{"hub", "l0"}, {"hub", "l1"}, {"hub", "l2"}};
  return g;
}

EmbeddedGraph triangle() {
  EmbeddedGraph g;
  g.vertices = {{"a", Point{0, 0}}, {"b", Point{4, 0}}, {"c", Point{1, 3}}};
  g.edges = {{"a", "b"}, {"b", "c"}, {"c", "a"}};
  return g;
}

EmbeddedGraph square() {
  EmbeddedGraph g;
  g.vertices = {{"a", Point{0, 0}}, {"b", Point{1, 0}}, {"c", Point{1, 1}}, {"d", Point{0, 1}}};
  g.edges = {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}};
  return g;
}

}  // namespace

TEST_CASE("tree subcommand") {
  const std::string t = write_graph("t.json", path3());
  auto r = run("tree " + t + " " + t);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("result: 0") != std::string::npos);

  const std::string s = write_graph("s.json", star4());
  r = run("tree " + t + " " + s);
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("undefined") != std::string::npos);

  // only one file rooted
  const std::string tr = write_graph("tr.json", path3(0.0, true));
  r = run("tree " + tr + " " + t);
  CHECK(r.exit_code == 2);

  // both rooted
  r = run("tree " + tr + " " + tr);
  CHECK(r.exit_code == 0);

  r = run("tree " + t + " /nonexistent.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("graph subcommand") {
  const std::string tri = write_graph("tri.json", triangle());
  auto r = run("graph " + tri + " " + tri);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("result: 0") != std::string::npos);

  const std::string sq = write_graph("sq.json", square());
  r = run("graph " + tri + " " + sq);
  CHECK(r.exit_code == 3);

  r = run("graph " + tri + " " + tri + " --guard 2");
  CHECK(r.exit_code == 4);
}

TEST_CASE("curve subcommand") {
  const std::string a = write_graph("ca.json", path3());
  const std::string b = write_graph("cb.json", path3(1.0));
  auto r = run("curve " + a + " " + a);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("result: 0") != std::string::npos);

  r = run("curve " + a + " " + b);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("result: 1") != std::string::npos);

  const std::string s = write_graph("cs.json", star4());
  r = run("curve " + a + " " + s);
  CHECK(r.exit_code == 2);
}

TEST_CASE("gen subcommand") {
  const std::string o1 = (work_dir() / "g1.json").string();
  const std::string o2 = (work_dir() / "g2.json").string();
  auto r = run("gen --kind tree -n 6 --seed 11 " + o1);
  CHECK(r.exit_code == 0);
  r = run("gen --kind tree -n 6 --seed 11 " + o2);
  CHECK(r.exit_code == 0);
  std::ifstream f1(o1), f2(o2);
  std::ostringstream b1, b2;
  b1 << f1.rdbuf();
  b2 << f2.rdbuf();
  CHECK(b1.str() == b2.str());  // same seed, identical bytes

  // eps=0 pair has distance exactly 0
  const std::string p1 = (work_dir() / "p1.json").string();
  const std::string p2 = (work_dir() / "p2.json").string();
  r = run("gen --kind pair -n 7 --eps 0 --seed 5 " + p1 + " " + p2);
  CHECK(r.exit_code == 0);
  r = run("tree " + p1 + " " + p2 + " --format json");
  CHECK(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["result"].get<double>() == 0.0);

  r = run("gen --kind tree -n 0 --seed 1 " + o1);
  CHECK(r.exit_code == 2);

  r = run("gen --kind pair -n 4 " + o1);  // pair needs two outputs
  CHECK(r.exit_code == 2);
}

TEST_CASE("json report matches the library bit for bit") {
  oracle::InstanceSpec spec;
  spec.kind = oracle::InstanceSpec::Kind::perturbed_copy;
  spec.vertex_count = 8;
  spec.epsilon = 0.2;
  spec.seed = 99;
  spec.subdivisions = 2;
  const auto [a, b] = oracle::gen_instance_pair(spec);
  const std::string fa = write_graph("ja.json", a);
  const std::string fb = write_graph("jb.json", b);

  auto r = run("tree " + fa + " " + fb + " --format json --witness");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["mode"] == "tree");

  const TreeFrechetResult lib = tree_frechet_unrooted(a, b);
  CHECK(j["result"].get<double>() == lib.distance.value());

  REQUIRE(j.contains("witness"));
  const auto& vm = j["witness"]["vertex_map"];
  REQUIRE(lib.witness.has_value());
  CHECK(vm.size() == lib.witness->vertex_map.size());
  for (const auto& [x, y] : lib.witness->vertex_map) CHECK(vm[x].get<std::string>() == y);

  CHECK(j.contains("timings_ms"));
  CHECK(j["timings_ms"].contains("contraction"));

  // no --witness flag, no witness key
  r = run("tree " + fa + " " + fb + " --format json");
  CHECK(!nlohmann::json::parse(r.out).contains("witness"));

  // graph mode agrees with the library too
  r = run("graph " + fa + " " + fb + " --format json");
  REQUIRE(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["result"].get<double>() ==
        graph_frechet(a, b).distance.value());
}

TEST_CASE("bench subcommand smoke") {
  auto r = run("bench --sizes 16 32 --seed 4 --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["mode"] == "bench");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["n"] == 16);
  CHECK(j.contains("slope"));
}
