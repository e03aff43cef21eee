#include "hsgen/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "hsgen/error.hpp"

namespace fs = std::filesystem;

namespace hsgen {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while ((pos = s.find_first_not_of(" \t\r", pos)) != std::string_view::npos) {
    const auto end = s.find_first_of(" \t\r", pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? s.size() - pos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return out;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto end = s.find(',', pos);
    out.push_back(trim(s.substr(pos, end == std::string_view::npos ? s.size() - pos : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

std::int64_t parse_int(std::string_view token, const std::string& where, std::size_t line) {
  std::int64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw FormatError(where, line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << bytes;
  if (!out) throw FormatError("write failed for " + path.string());
}

std::string graph_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "graph_%06zu.txt", index);
  return buf;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

const std::regex& graph_file_pattern() {
  static const std::regex re(R"(graph_\d+\.txt)");
  return re;
}

}  // namespace

void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const fs::path& path, const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  write_file(path, os.str());
}

Graph read_edge_list(std::istream& is, const std::string& where) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (!trim(line).empty()) return true;
    }
    return false;
  };
  if (!next_content()) throw FormatError(where, line_no + 1, "missing \"N M\" header");
  const auto header = split_whitespace(line);
  if (header.size() != 2) throw FormatError(where, line_no, "header must be \"N M\"");
  const auto n = parse_int(header[0], where, line_no);
  const auto m = parse_int(header[1], where, line_no);
  if (n < 0 || m < 0) throw FormatError(where, line_no, "negative size in header");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::unordered_set<std::uint64_t> seen;
  while (next_content()) {
    if (edges.size() == static_cast<std::size_t>(m)) {
      throw FormatError(where, line_no, "more edge lines than the header's M = " + std::to_string(m));
    }
    const auto fields = split_whitespace(line);
    if (fields.size() != 2) throw FormatError(where, line_no, "edge line must be \"u v\"");
    const auto u = parse_int(fields[0], where, line_no);
    const auto v = parse_int(fields[1], where, line_no);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw FormatError(where, line_no, "endpoint out of range [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw FormatError(where, line_no, "self-loop");
    const Edge e = make_edge(static_cast<Node>(u), static_cast<Node>(v));
    const auto key = (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
    if (!seen.insert(key).second) throw FormatError(where, line_no, "duplicate edge");
    edges.push_back(e);
  }
  if (edges.size() != static_cast<std::size_t>(m)) {
    throw FormatError(where, line_no, "header declares M = " + std::to_string(m) + " but found " +
                                          std::to_string(edges.size()) + " edge lines");
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph read_edge_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_edge_list(in, path.string());
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= 0x100000001b3ULL;
  }
  return state;
}

nlohmann::json CorpusManifest::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["format"] = format;
  j["count"] = graphs.size();
  auto& list = j["graphs"] = nlohmann::json::array();
  for (const auto& s : graphs) list.push_back({{"file", s.file}, {"n", s.n}, {"m", s.m}});
  j["checksum"] = checksum;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  j["config"] = config;
  return j;
}

CorpusManifest CorpusManifest::from_json(const nlohmann::json& j) {
  try {
    CorpusManifest m;
    m.name = j.at("name").get<std::string>();
    m.format = j.at("format").get<std::string>();
    for (const auto& g : j.at("graphs")) {
      m.graphs.push_back({g.at("file").get<std::string>(), g.at("n").get<std::size_t>(),
                          g.at("m").get<std::size_t>()});
    }
    if (j.at("count").get<std::size_t>() != m.graphs.size()) {
      throw FormatError("manifest count does not match its graph list");
    }
    m.checksum = j.at("checksum").get<std::string>();
    if (j.contains("seed") && !j["seed"].is_null()) m.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("config")) m.config = j["config"];
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  }
}

CorpusManifest write_corpus(const fs::path& dir, std::span<const Graph> graphs,
                            const CorpusManifest& meta) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw FormatError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(name, graph_file_pattern())) {
      fs::remove(entry.path());
    }
  }

  CorpusManifest manifest = meta;
  manifest.format = kEdgeListFormat;
  manifest.graphs.clear();
  std::uint64_t hash = fnv1a64({});
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    std::ostringstream os;
    write_edge_list(os, graphs[i]);
    const std::string bytes = os.str();
    const std::string file = graph_file_name(i);
    write_file(dir / file, bytes);
    hash = fnv1a64(bytes, hash);
    manifest.graphs.push_back({file, graphs[i].num_nodes(), graphs[i].num_edges()});
  }
  manifest.checksum = hex64(hash);
  write_file(dir / kManifestFile, manifest.to_json().dump(2) + "\n");
  return manifest;
}

std::vector<Graph> read_corpus(const fs::path& dir, CorpusManifest* manifest_out) {
  const fs::path manifest_path = dir / kManifestFile;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(manifest_path.string() + ": " + e.what());
  }
  CorpusManifest manifest = CorpusManifest::from_json(j);
  if (manifest.format != kEdgeListFormat) {
    throw FormatError(manifest_path.string() + ": unsupported format '" + manifest.format + "'");
  }
  std::vector<Graph> graphs;
  graphs.reserve(manifest.graphs.size());
  std::uint64_t hash = fnv1a64({});
  for (const auto& s : manifest.graphs) {
    const fs::path path = dir / s.file;
    const std::string bytes = read_file(path);
    hash = fnv1a64(bytes, hash);
    std::istringstream is(bytes);
    Graph g = read_edge_list(is, path.string());
    if (g.num_nodes() != s.n || g.num_edges() != s.m) {
      throw FormatError(path.string() + ": size does not match manifest summary");
    }
    graphs.push_back(std::move(g));
  }
  if (hex64(hash) != manifest.checksum) {
    throw FormatError(manifest_path.string() + ": checksum mismatch");
  }
  if (manifest_out) *manifest_out = std::move(manifest);
  return graphs;
}

namespace {

std::optional<std::string> tudataset_prefix(const fs::path& dir) {
  std::optional<std::string> prefix;
  if (!fs::is_directory(dir)) return prefix;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    constexpr std::string_view suffix = "_A.txt";
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      if (prefix) throw FormatError(dir.string() + ": more than one *_A.txt file");
      prefix = name.substr(0, name.size() - suffix.size());
    }
  }
  return prefix;
}

}  // namespace

bool is_tudataset_dir(const fs::path& dir) { return tudataset_prefix(dir).has_value(); }

std::vector<Graph> read_tudataset(const fs::path& dir) {
  const auto prefix = tudataset_prefix(dir);
  if (!prefix) throw FormatError(dir.string() + ": no *_A.txt file");
  const fs::path a_path = dir / (*prefix + "_A.txt");
  const fs::path ind_path = dir / (*prefix + "_graph_indicator.txt");
  if (!fs::exists(ind_path)) throw FormatError(ind_path.string() + ": missing");

  // Node k (1-based) belongs to graph_of[k - 1]; local ids follow file order.
  std::vector<std::size_t> graph_of;
  std::vector<Node> local_id;
  std::vector<std::size_t> sizes;
  {
    std::istringstream in(read_file(ind_path));
    const std::string where = ind_path.string();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto token = trim(line);
      if (token.empty()) continue;
      const auto id = parse_int(token, where, line_no);
      if (id < 1) throw FormatError(where, line_no, "graph ids are 1-based");
      const auto g = static_cast<std::size_t>(id - 1);
      if (g >= sizes.size()) sizes.resize(g + 1, 0);
      graph_of.push_back(g);
      local_id.push_back(static_cast<Node>(sizes[g]++));
    }
    for (std::size_t g = 0; g < sizes.size(); ++g) {
      if (sizes[g] == 0) throw FormatError(where + ": graph id " + std::to_string(g + 1) + " has no nodes");
    }
  }

  std::vector<std::vector<Edge>> edges(sizes.size());
  std::vector<std::unordered_set<std::uint64_t>> seen(sizes.size());
  {
    std::istringstream in(read_file(a_path));
    const std::string where = a_path.string();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto fields = split_commas(line);
      if (fields.size() != 2) throw FormatError(where, line_no, "expected \"a, b\"");
      const auto a = parse_int(fields[0], where, line_no);
      const auto b = parse_int(fields[1], where, line_no);
      for (auto x : {a, b}) {
        if (x < 1 || static_cast<std::size_t>(x) > graph_of.size()) {
          throw FormatError(where, line_no, "node id " + std::to_string(x) +
                                                " not in graph indicator (" +
                                                std::to_string(graph_of.size()) + " nodes)");
        }
      }
      const std::size_t ga = graph_of[a - 1];
      if (ga != graph_of[b - 1]) {
        throw FormatError(where, line_no, "edge joins nodes of graphs " + std::to_string(ga + 1) +
                                              " and " + std::to_string(graph_of[b - 1] + 1));
      }
      if (a == b) continue;
      const Edge e = make_edge(local_id[a - 1], local_id[b - 1]);
      const auto key = (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
      if (seen[ga].insert(key).second) edges[ga].push_back(e);
    }
  }
  std::vector<Graph> graphs;
  graphs.reserve(sizes.size());
  for (std::size_t g = 0; g < sizes.size(); ++g) graphs.emplace_back(sizes[g], std::move(edges[g]));
  return graphs;
}

std::vector<Graph> read_graphs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FormatError(dir.string() + ": not a directory");
  if (fs::exists(dir / kManifestFile)) return read_corpus(dir);
  if (is_tudataset_dir(dir)) return read_tudataset(dir);
  throw FormatError(dir.string() + ": neither a corpus directory nor a TUDataset directory");
}

void write_dot(std::ostream& os, const Graph& g, std::span<const Node> highlight) {
  std::vector<bool> marked(g.num_nodes(), false);
  for (Node v : highlight) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.num_nodes()) {
      throw InvalidNode("highlight node " + std::to_string(v) + " out of range");
    }
    marked[v] = true;
  }
  os << "graph G {\n";
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    os << "  " << v;
    if (marked[v]) os << " [color=" << kHighlightColor << ", style=filled, fillcolor=" << kHighlightColor << "]";
    os << ";\n";
  }
  for (const Edge& e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
}

void write_dot(const fs::path& path, const Graph& g, std::span<const Node> highlight) {
  std::ostringstream os;
  write_dot(os, g, highlight);
  write_file(path, os.str());
}

}  // namespace hsgen
