#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hsgen/cli.hpp"
#include "hsgen/error.hpp"
#include "hsgen/io.hpp"
#include "json.hpp"

using namespace hsgen;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / ("hsgen_cli_" + std::to_string(::getpid()));

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Run run_cli(const std::string& args) {
  fs::create_directories(kRoot);
  const fs::path out = kRoot / "stdout.txt", err = kRoot / "stderr.txt";
  const std::string cmd = std::string("cd ") + kRoot.string() + " && NO_COLOR=1 " + HSGEN_CLI_PATH +
                          " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path dir(const std::string& name) { return kRoot / name; }

bool same_directory(const fs::path& a, const fs::path& b) {
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    if (slurp(entry.path()) != slurp(b / entry.path().filename())) return false;
  }
  return files == static_cast<std::size_t>(std::distance(fs::directory_iterator(b), fs::directory_iterator{}));
}

struct Cleanup {
  ~Cleanup() { fs::remove_all(kRoot); }
} cleanup;

}  // namespace

TEST_CASE("generate writes the requested budget") {
  const Run r = run_cli("generate --method hsg --n 50 --m 100 --dmax 8 --count 10 --seed 1 --out g1");
  REQUIRE(r.code == 0);
  CorpusManifest m;
  const auto graphs = read_corpus(dir("g1"), &m);
  REQUIRE(graphs.size() == 10);
  for (const Graph& g : graphs) {
    CHECK(g.num_nodes() == 50);
    CHECK(g.num_edges() == 100);
    CHECK(g.max_degree() <= 8);
  }
  CHECK(m.seed == std::optional<std::uint64_t>(1));
  CHECK(m.config["method"] == "hsg");
  CHECK(m.config["d_max"] == 8);
}

TEST_CASE("generate is deterministic") {
  REQUIRE(run_cli("generate --n 60 --m 150 --count 6 --seed 4 --out d1").code == 0);
  REQUIRE(run_cli("generate --n 60 --m 150 --count 6 --seed 4 --out d2").code == 0);
  CHECK(same_directory(dir("d1"), dir("d2")));
  REQUIRE(run_cli("generate --n 60 --m 150 --count 6 --seed 5 --out d3").code == 0);
  CHECK_FALSE(same_directory(dir("d1"), dir("d3")));
}

TEST_CASE("synth and mirror") {
  REQUIRE(run_cli("synth tree --count 5 --seed 2 --out trees").code == 0);
  const auto trees = read_corpus(dir("trees"));
  REQUIRE(trees.size() == 5);
  for (const Graph& t : trees) {
    CHECK(t.num_nodes() >= 100);
    CHECK(t.num_nodes() <= 200);
  }
  for (const char* method : {"er", "ba", "ws", "hsg"}) {
    const std::string out = std::string("mirror_") + method;
    REQUIRE(run_cli(std::string("generate --method ") + method + " --mirror trees --seed 3 --out " + out).code == 0);
    const auto generated = read_corpus(dir(out));
    REQUIRE(generated.size() == trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) CHECK(generated[i].num_nodes() == trees[i].num_nodes());
    if (std::string(method) == "er" || std::string(method) == "hsg") {
      for (std::size_t i = 0; i < trees.size(); ++i) CHECK(generated[i].num_edges() == trees[i].num_edges());
    }
  }
}

TEST_CASE("synth grid sides") {
  REQUIRE(run_cli("synth grid --count 5 --out grids").code == 0);
  for (const Graph& g : read_corpus(dir("grids"))) {
    bool found = false;
    for (std::size_t a = 10; a <= 20; ++a)
      for (std::size_t b = 10; b <= 20; ++b)
        found = found || (a * b == g.num_nodes() && a * (b - 1) + b * (a - 1) == g.num_edges());
    CHECK(found);
  }
}

TEST_CASE("eval") {
  REQUIRE(run_cli("synth tree --count 10 --seed 8 --out ref").code == 0);
  const Run self = run_cli("eval --reference ref --generated ref");
  REQUIRE(self.code == 0);
  const auto j = nlohmann::json::parse(self.out);
  CHECK(j["deg"] == 0.0);
  CHECK(j["clus"] == 0.0);
  CHECK(j["orbit"] == 0.0);
  const Run csv = run_cli("eval --reference ref --generated ref --format csv --out report.csv --no-orbit");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("deg,clus,orbit", 0) == 0);
  CHECK(slurp(dir("report.csv")) == csv.out);
}

TEST_CASE("bench rows") {
  const Run r = run_cli("bench --n 300 --c 0.05 --runs 3");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].rfind("run,n,m,", 0) == 0);
  CHECK(rows[4].rfind("mean,300,", 0) == 0);
}

TEST_CASE("phase fractions sum to one") {
  BenchOptions o;
  o.sizes = {200};
  o.runs = 2;
  for (const BenchRow& row : run_bench(o)) {
    const auto& t = row.timings;
    CHECK(std::abs(t.fraction_parse() + t.fraction_connect() + t.fraction_densify() - 1.0) <= 1e-6);
  }
  CHECK(edges_for_sparsity(2000, 0.05) == 99950);
  CHECK(edges_for_sparsity(20, 0.01) == 19);
}

TEST_CASE("config file with flag overrides") {
  fs::create_directories(kRoot);
  std::ofstream(kRoot / "cfg.json") << R"({"generate": {"n": 30, "m": 45, "count": 2, "seed": 9}})";
  REQUIRE(run_cli("generate --config cfg.json --m 60 --out from_cfg").code == 0);
  const auto graphs = read_corpus(dir("from_cfg"));
  REQUIRE(graphs.size() == 2);
  CHECK(graphs[0].num_nodes() == 30);
  CHECK(graphs[0].num_edges() == 60);
  std::ofstream(kRoot / "bad.json") << R"({"generate": {"n": "many"}})";
  CHECK(run_cli("generate --config bad.json --out x").code == 1);
  CHECK(run_cli("generate --config missing.json --out x").code == 1);
}

TEST_CASE("dot output highlights anchors") {
  REQUIRE(run_cli("generate --n 30 --m 40 --dmax 6 --count 1 --dot --out dots").code == 0);
  const std::string dot = slurp(dir("dots") / "graph_000000.dot");
  CHECK(dot.find("  0 [color=red") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("synth tree --count 0 --out z").code == 1);
  CHECK(run_cli("generate --n 10 --m 5 --out z").code == 1);
  CHECK(run_cli("generate --method xyz --n 10 --m 20 --out z").code == 1);
  CHECK(run_cli("frobnicate").code == 1);
  CHECK(run_cli("generate --bogus").code == 1);
  CHECK(run_cli("").code == 1);
  fs::create_directories(dir("not_a_corpus"));
  std::ofstream(dir("not_a_corpus") / "notes.txt") << "hello";
  REQUIRE(run_cli("synth tree --count 3 --out ok").code == 0);
  CHECK(run_cli("eval --reference ok --generated not_a_corpus").code == 2);
  write_corpus(dir("empty"), std::vector<Graph>{}, CorpusManifest{});
  CHECK(run_cli("eval --reference ok --generated empty").code == 1);
  const Run bad = run_cli("eval --reference ok --generated not_a_corpus");
  CHECK(bad.err.rfind("error: ", 0) == 0);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("options round-trip through json") {
  GenerateOptions o;
  o.method = Method::kWs;
  o.n = 12;
  o.m = 30;
  o.d_max = 5;
  o.model = DegreeKind::kGamma;
  o.ws_rewire_p = 0.3;
  o.use_truncation_k = false;
  const GenerateOptions back = GenerateOptions::from_json(o.to_json(), {});
  CHECK(back.to_json() == o.to_json());
  CHECK_THROWS_AS(GenerateOptions::from_json(nlohmann::json{{"count", "x"}}, {}), InvalidConfig);
}
