#include <unistd.h>

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hsgen/error.hpp"
#include "hsgen/io.hpp"
#include "hsgen/synth.hpp"

using namespace hsgen;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("hsgen_io_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Graph parse(const std::string& text) {
  std::istringstream is(text);
  return read_edge_list(is, "test");
}

std::size_t format_error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const FormatError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("edge list text") {
  std::ostringstream os;
  write_edge_list(os, Graph(3, {{1, 2}, {0, 2}, {0, 1}}));
  CHECK(os.str() == "3 3\n0 1\n0 2\n1 2\n");
  CHECK(parse(os.str()) == Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(parse("4 0\n").num_nodes() == 4);
}

TEST_CASE("edge list errors carry line numbers") {
  CHECK(format_error_line([] { parse("3 2\n0 1\n0 2\n1 2\n"); }) == 4);
  CHECK(format_error_line([] { parse("3 3\n0 1\n0 2\n"); }) == 3);
  CHECK(format_error_line([] { parse("3 1\n0 3\n"); }) == 2);
  CHECK(format_error_line([] { parse("3\n"); }) == 1);
  CHECK(format_error_line([] { parse("3 x\n"); }) == 1);
  CHECK(format_error_line([] { parse("3 2\n0 1\n1 0\n"); }) == 3);
  CHECK(format_error_line([] { parse("3 1\n1 1\n"); }) == 2);
  CHECK_THROWS_AS(parse(""), FormatError);
}

TEST_CASE("corpus round trip is byte-identical") {
  TempDir a("rt_a"), b("rt_b");
  CorpusSpec s;
  s.kind = CorpusKind::kTree;
  s.count = 200;
  s.seed = 12;
  const auto graphs = tree_corpus(s);
  CorpusManifest meta;
  meta.name = "trees";
  meta.seed = 12;
  const CorpusManifest written = write_corpus(a.path, graphs, meta);
  CHECK(written.graphs.size() == 200);
  CorpusManifest read_back;
  const auto again = read_corpus(a.path, &read_back);
  CHECK(again == graphs);
  CHECK(read_back.seed == std::optional<std::uint64_t>(12));
  CHECK(read_back.checksum == written.checksum);
  write_corpus(b.path, again, read_back);
  for (const auto& entry : fs::directory_iterator(a.path)) {
    CHECK(slurp(entry.path()) == slurp(b.path / entry.path().filename()));
  }
}

TEST_CASE("corpus integrity checks") {
  TempDir d("integrity");
  const std::vector<Graph> graphs{Graph(3, {{0, 1}, {1, 2}}), Graph(2, {{0, 1}})};
  write_corpus(d.path, graphs, CorpusManifest{});
  write(d.path / "graph_000001.txt", "2 0\n");
  CHECK_THROWS_AS(read_corpus(d.path), FormatError);
  write_corpus(d.path, graphs, CorpusManifest{});
  write(d.path / "graph_000000.txt", "3 1\n0 2\n");
  CHECK_THROWS_AS(read_corpus(d.path), FormatError);
  fs::remove(d.path / kManifestFile);
  CHECK_THROWS_AS(read_graphs(d.path), FormatError);
}

TEST_CASE("rewriting a smaller corpus removes stale graph files") {
  TempDir d("stale");
  write_corpus(d.path, std::vector<Graph>(3, Graph(2, {{0, 1}})), CorpusManifest{});
  write_corpus(d.path, std::vector<Graph>(1, Graph(2, {{0, 1}})), CorpusManifest{});
  CHECK_FALSE(fs::exists(d.path / "graph_000002.txt"));
  CHECK(read_corpus(d.path).size() == 1);
}

TEST_CASE("tudataset: minimal file") {
  TempDir d("tu_min");
  write(d.path / "DS_A.txt", "1, 2\n2, 1\n");
  write(d.path / "DS_graph_indicator.txt", "1\n1\n");
  const auto graphs = read_tudataset(d.path);
  REQUIRE(graphs.size() == 1);
  CHECK(graphs[0].num_nodes() == 2);
  CHECK(graphs[0].num_edges() == 1);
}

TEST_CASE("tudataset: two graphs") {
  TempDir d("tu_two");
  write(d.path / "DS_A.txt", "1, 2\n2, 1\n3, 4\n4, 3\n4, 5\n5, 4\n");
  write(d.path / "DS_graph_indicator.txt", "1\n1\n2\n2\n2\n");
  write(d.path / "DS_node_labels.txt", "7\n7\n7\n7\n7\n");
  CHECK(is_tudataset_dir(d.path));
  const auto graphs = read_graphs(d.path);
  REQUIRE(graphs.size() == 2);
  CHECK(graphs[0].num_nodes() == 2);
  CHECK(graphs[0].num_edges() == 1);
  CHECK(graphs[1].num_nodes() == 3);
  CHECK(graphs[1].num_edges() == 2);
  CHECK(graphs[0].degrees() == std::vector<std::size_t>{1, 1});
  CHECK(graphs[1].degrees() == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("tudataset: errors name the offending line") {
  TempDir d("tu_err");
  write(d.path / "DS_graph_indicator.txt", "1\n1\n2\n");
  write(d.path / "DS_A.txt", "1, 2\n2, 3\n");
  try {
    read_tudataset(d.path);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("DS_A.txt:2") != std::string::npos);
  }
  write(d.path / "DS_A.txt", "1, 9\n");
  CHECK(format_error_line([&] { read_tudataset(d.path); }) == 1);
  write(d.path / "DS_A.txt", "1, x\n");
  CHECK(format_error_line([&] { read_tudataset(d.path); }) == 1);
  write(d.path / "DS_A.txt", "1, 2\n");
  write(d.path / "DS_graph_indicator.txt", "1\n1\nfoo\n");
  CHECK(format_error_line([&] { read_tudataset(d.path); }) == 3);
}

TEST_CASE("dot export") {
  const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  std::ostringstream plain;
  write_dot(plain, k3);
  const std::string text = plain.str();
  CHECK(text.rfind("graph G {", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3 + 3 + 2);
  CHECK(text.find(" -- ") != std::string::npos);
  CHECK(text.find("color") == std::string::npos);

  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  std::ostringstream marked;
  const std::vector<Node> hub{0};
  write_dot(marked, star, hub);
  CHECK(marked.str().find("  0 [color=red") != std::string::npos);
  CHECK(marked.str().find("  1 [") == std::string::npos);

  std::ostringstream empty_highlight, absent;
  write_dot(empty_highlight, star, std::vector<Node>{});
  write_dot(absent, star);
  CHECK(empty_highlight.str() == absent.str());
  const std::vector<Node> bad{9};
  CHECK_THROWS_AS(write_dot(absent, star, bad), InvalidNode);
}
