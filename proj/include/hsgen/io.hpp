#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "hsgen/graph.hpp"

namespace hsgen {

// Edge-list text: "N M" then M lines "u v" with u < v in lexicographic order.
void write_edge_list(std::ostream& os, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);
// Accepts any edge order; `where` names the source in error messages.
Graph read_edge_list(std::istream& is, const std::string& where = "<stream>");
Graph read_edge_list(const std::filesystem::path& path);

struct GraphSummary {
  std::string file;
  std::size_t n = 0;
  std::size_t m = 0;
};

inline constexpr const char* kEdgeListFormat = "edgelist-v1";
inline constexpr const char* kManifestFile = "manifest.json";

struct CorpusManifest {
  std::string name;
  std::string format = kEdgeListFormat;
  std::vector<GraphSummary> graphs;
  // FNV-1a 64 over the graph files' bytes in listing order, hex encoded.
  std::string checksum;
  std::optional<std::uint64_t> seed;
  nlohmann::json config = nlohmann::json::object();

  nlohmann::json to_json() const;
  static CorpusManifest from_json(const nlohmann::json& j);
};

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state = 0xcbf29ce484222325ULL);

// Writes graph_000000.txt, graph_000001.txt, ... and manifest.json into dir,
// creating it if needed. Stale graph_*.txt files from an earlier run are
// removed first. name, seed and config are copied from `meta`; the graph
// list and checksum are filled in. Returns the written manifest.
CorpusManifest write_corpus(const std::filesystem::path& dir, std::span<const Graph> graphs,
                            const CorpusManifest& meta);

// Reads a corpus directory and checks it against its manifest (count,
// per-graph sizes, checksum). Throws FormatError on any mismatch.
std::vector<Graph> read_corpus(const std::filesystem::path& dir,
                               CorpusManifest* manifest_out = nullptr);

// TUDataset flat files: DS_A.txt ("a, b" per directed row, 1-based) and
// DS_graph_indicator.txt (1-based graph id per node). Other DS_* files are
// ignored. Both directions of an edge collapse to one; self-loops are dropped.
std::vector<Graph> read_tudataset(const std::filesystem::path& dir);

bool is_tudataset_dir(const std::filesystem::path& dir);

// Either layout above, chosen by directory contents.
std::vector<Graph> read_graphs(const std::filesystem::path& dir);

inline constexpr const char* kHighlightColor = "red";

void write_dot(std::ostream& os, const Graph& g, std::span<const Node> highlight = {});
void write_dot(const std::filesystem::path& path, const Graph& g,
               std::span<const Node> highlight = {});

}  // namespace hsgen
