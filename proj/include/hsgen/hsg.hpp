#pragma once

// Hierarchical scale-free graph generation from (N, M, d_max) alone.
//
// Stage 1 (parse) splits the node set into star substructures whose anchor
// degrees follow the degree model. Stage 2 first bridges the stars into one
// connected component (connect), then adds the remaining edges by sampling
// both endpoints from a probability list over per-substructure degree
// entries (densify). Selection weight of an entry is
//
//   s_i * P(deg + 1)      with s_i = |substructure i| / N,
//
// normalised over the unmasked entries.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hsgen/distributions.hpp"
#include "hsgen/graph.hpp"
#include "hsgen/rng.hpp"

namespace hsgen {

struct GeneratorConfig {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d_max = 0;
  // Unset means Poisson with lambda = 2m / n.
  std::optional<DegreeModel> degree_model;
  bool use_truncation_k = true;
  bool use_dmax_limit = true;
  std::uint64_t seed = 0;
  // Densify attempts ceil(remaining / 2) edges per probability-list build;
  // when false the list is rebuilt after every edge.
  bool batch_halving = true;

  double avg_degree() const;
  double edge_probability() const;
  DegreeModel resolved_model() const;

  // Throws InvalidConfig when any of the following fails:
  //   n >= 2, d_max >= 1, n - 1 <= m <= n(n-1)/2,
  //   m <= floor(n d_max / 2) when use_dmax_limit.
  void validate() const;
};

struct SubstructureSet {
  std::vector<std::size_t> anchor_degrees;
  // First node id of each star; the anchor is node_offsets[i], its leaves
  // follow contiguously.
  std::vector<Node> node_offsets;

  std::size_t count() const noexcept { return anchor_degrees.size(); }
  std::size_t size(std::size_t i) const { return anchor_degrees[i] + 1; }
  Node anchor(std::size_t i) const { return node_offsets[i]; }
  std::size_t total_nodes() const;
  // Star edges (anchor, leaf) of every substructure.
  std::vector<Edge> star_edges() const;
};

enum class EntryState { kActive, kMasked };

// Degree table over the substructures together with the masking rules:
//  - a leaf is masked once its degree reaches d_max;
//  - an anchor is masked while its substructure still has a leaf below
//    d_max, and once its own degree reaches d_max.
// Without the d_max limit no entry is ever capped, but anchors still yield
// to their leaves while any leaf is below d_max.
class EntryList {
 public:
  EntryList(const SubstructureSet& subs, std::size_t d_max, bool enforce_dmax);

  std::size_t substructure_count() const noexcept { return offsets_.size() - 1; }
  std::size_t row_size(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
  std::size_t num_nodes() const noexcept { return degree_.size(); }

  Node node(std::size_t i, std::size_t j) const { return static_cast<Node>(offsets_[i] + j); }
  std::size_t degree(std::size_t i, std::size_t j) const { return degree_[offsets_[i] + j]; }
  std::size_t degree_of(Node v) const { return degree_[v]; }
  std::size_t substructure_of(Node v) const { return owner_[v]; }
  bool is_anchor(Node v) const { return offsets_[owner_[v]] == static_cast<std::size_t>(v); }

  EntryState state(std::size_t i, std::size_t j) const;
  bool is_active(Node v) const;
  // Whether v may take one more edge under the d_max limit.
  bool has_capacity(Node v) const;
  std::size_t leaves_below_cap(std::size_t i) const { return leaves_below_cap_[i]; }

  std::size_t d_max() const noexcept { return d_max_; }
  bool enforces_dmax() const noexcept { return enforce_dmax_; }

  void add_edge(Node u, Node v);

 private:
  void bump(Node v);

  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> owner_;
  std::vector<std::size_t> degree_;
  std::vector<std::size_t> leaves_below_cap_;
  std::size_t d_max_;
  bool enforce_dmax_;
};

struct EntryIndex {
  std::uint32_t sub;
  std::uint32_t pos;
  friend bool operator==(const EntryIndex&, const EntryIndex&) = default;
};

// Unnormalised selection weight s_i * P(deg + 1) for each entry, with the
// model's mass table cached.
class SelectionWeights {
 public:
  SelectionWeights(const DegreeModel& model, std::size_t n);
  double operator()(std::size_t substructure_size, std::size_t degree) const;

 private:
  std::vector<double> next_mass_;
  double n_;
};

struct ProbabilityList {
  std::vector<double> plist;       // normalised weights, sum 1
  std::vector<EntryIndex> nlist;   // parallel (substructure, position) pairs
  std::vector<Node> nodes;         // parallel node ids
  std::vector<double> cumulative;  // running sum of plist
  // Alias table for O(1) draws: slot k keeps itself with probability
  // keep[k], otherwise yields alias[k].
  std::vector<double> keep;
  std::vector<std::uint32_t> alias;
  // True when every active weight underflowed to zero and the list fell back
  // to uniform weights.
  bool uniform_fallback = false;

  bool empty() const noexcept { return plist.empty(); }
  std::size_t size() const noexcept { return plist.size(); }
  Node sample(Rng& rng) const;
  // Normalised weight of node v, 0 when v is not listed.
  double weight_of(Node v) const;
};

// Builds the list over active entries. Throws ExhaustedCapacity when every
// entry is masked.
ProbabilityList build_probability_list(const EntryList& entries, const GeneratorConfig& cfg);
ProbabilityList build_probability_list(const EntryList& entries, const SelectionWeights& weights);

// Same, skipping nodes with excluded[v] != 0; may return an empty list.
ProbabilityList build_probability_list(const EntryList& entries, const SelectionWeights& weights,
                                       std::span<const char> excluded);

// Mutable edge set used while generating: O(1) membership and removal.
// Graphs of up to kMatrixNodes nodes use a bit matrix (removal is then a
// linear search, which only the rare swap fallback needs); larger ones use
// open addressing with linear probing and backward-shift deletion.
class EdgeSet {
 public:
  static constexpr std::size_t kMatrixNodes = 16384;

  EdgeSet() { rehash(16); }
  // num_nodes = 0 (unknown) selects the hash table.
  explicit EdgeSet(std::size_t expected, std::size_t num_nodes = 0);

  bool contains(Node u, Node v) const {
    if (!bits_.empty()) return test(u, v);
    return find(key(u, v)) != kNone;
  }
  // Returns false if the edge already exists.
  bool insert(Node u, Node v);
  void erase(Node u, Node v);
  std::size_t size() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  // Neighbours of u as a bit row (bit v set when the edge exists); empty
  // unless the bit matrix is in use.
  std::span<const std::uint64_t> row(Node u) const noexcept {
    if (bits_.empty()) return {};
    return std::span<const std::uint64_t>(bits_).subspan(static_cast<std::size_t>(u) * row_words_, row_words_);
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  static constexpr std::size_t kNone = ~std::size_t{0};

  struct Slot {
    std::uint64_t key = kEmpty;
    std::size_t index = 0;
  };

  static std::uint64_t key(Node u, Node v) {
    const Edge e = make_edge(u, v);
    return (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
  }
  std::size_t home(std::uint64_t k) const { return splitmix64(k) & (slots_.size() - 1); }
  // Slot holding k, or kNone.
  std::size_t find(std::uint64_t k) const;
  void rehash(std::size_t capacity);

  std::size_t bit(Node u, Node v) const {
    return static_cast<std::size_t>(u) * row_words_ * 64 + static_cast<std::size_t>(v);
  }
  bool test(Node u, Node v) const { return (bits_[bit(u, v) >> 6] >> (bit(u, v) & 63)) & 1; }
  void flip(Node u, Node v) {
    bits_[bit(u, v) >> 6] ^= std::uint64_t{1} << (bit(u, v) & 63);
    bits_[bit(v, u) >> 6] ^= std::uint64_t{1} << (bit(v, u) & 63);
  }

  std::vector<Edge> edges_;
  std::vector<Slot> slots_;
  std::size_t row_words_ = 0;
  std::vector<std::uint64_t> bits_;
};

enum class Phase { kParse, kConnect, kDensify };

struct ScanInfo {
  std::size_t scan_index = 0;
  std::size_t batch_size = 0;
  std::size_t active_entries = 0;
  std::size_t placed = 0;
};

// Optional observers. on_probability_list sees every list built during
// connect and densify, with the entry table as it was at build time.
struct GeneratorHooks {
  std::function<void(const ScanInfo&)> on_scan;
  std::function<void(const ProbabilityList&, const EntryList&)> on_probability_list;
  std::function<void(Phase, std::chrono::nanoseconds)> on_phase;
};

SubstructureSet parse_stage(const GeneratorConfig& cfg, Rng& rng);

// Joins the stars into one component with exactly count() - 1 bridges.
// Edges are added to `edges` and `entries`; the bridges are returned.
std::vector<Edge> connect_stage(const SubstructureSet& subs, EntryList& entries, EdgeSet& edges,
                                const GeneratorConfig& cfg, Rng& rng,
                                const GeneratorHooks& hooks = {});

struct DensifyResult {
  std::vector<Edge> added;
  // Edges removed by degree-preserving swaps when rejection sampling could
  // not place an edge; empty in ordinary runs.
  std::vector<Edge> removed;
  std::size_t scans = 0;
  std::size_t swaps = 0;
};

// Adds edges until `edges` holds cfg.m of them.
DensifyResult densify_stage(EntryList& entries, EdgeSet& edges, const GeneratorConfig& cfg,
                            Rng& rng, const GeneratorHooks& hooks = {});

struct GenerationResult {
  Graph graph;
  SubstructureSet substructures;
  std::size_t bridges = 0;
  std::size_t scans = 0;
  std::size_t swaps = 0;
  std::chrono::nanoseconds parse_time{0};
  std::chrono::nanoseconds connect_time{0};
  std::chrono::nanoseconds densify_time{0};
};

GenerationResult generate_detailed(const GeneratorConfig& cfg, const GeneratorHooks& hooks = {});
Graph generate(const GeneratorConfig& cfg);

}  // namespace hsgen
