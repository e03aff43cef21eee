#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hsgen/graph.hpp"
#include "hsgen/rng.hpp"

namespace hsgen {

enum class CorpusKind { kClus, kEgo, kGrid, kTree };

std::string_view to_string(CorpusKind kind);
CorpusKind parse_corpus_kind(std::string_view name);

struct CorpusSpec {
  CorpusKind kind = CorpusKind::kTree;
  std::size_t count = 200;
  std::uint64_t seed = 0;

  // GRID: side lengths drawn uniformly from [grid_side_min, grid_side_max].
  std::size_t grid_side_min = 10;
  std::size_t grid_side_max = 20;

  // TREE: node counts drawn uniformly from [tree_size_min, tree_size_max].
  std::size_t tree_size_min = 100;
  std::size_t tree_size_max = 200;

  // CLUS: Holme-Kim growth. Four links per arriving node on 12..18 nodes,
  // always closing a triad when one is available, gives average degree
  // 5.8, sparsity 0.42 and mean clustering 0.65.
  std::size_t clus_nodes_min = 12;
  std::size_t clus_nodes_max = 18;
  std::size_t clus_attach_m = 4;
  double clus_triad_p = 1.0;

  // EGO: 1-hop neighbourhood of the hub of an expected-degree graph on
  // ego_population nodes whose weights are power-law with this exponent,
  // cut off at ego_mean_nodes - 1. The large sparse population keeps links
  // between the hub's neighbours rare (near-star egos, clustering near 0).
  std::size_t ego_mean_nodes = 150;
  double ego_exponent = 2.5;
  std::size_t ego_population = 1000000;
  std::size_t ego_max_retries = 32;

  // Throws InvalidConfig on count == 0, empty ranges, or parameters outside
  // the ranges each kind supports.
  void validate() const;
};

// Whole corpora; graph i is built from the substream derive_seed(seed, i),
// so the result does not depend on the number of worker threads.
std::vector<Graph> grid_corpus(const CorpusSpec& spec);
std::vector<Graph> tree_corpus(const CorpusSpec& spec);
std::vector<Graph> clus_corpus(const CorpusSpec& spec);
std::vector<Graph> ego_corpus(const CorpusSpec& spec);
std::vector<Graph> synthesize(const CorpusSpec& spec);

// rows x cols lattice; node (r, c) has id r * cols + c.
Graph grid_graph(std::size_t rows, std::size_t cols);

// Decodes a Pruefer sequence of length n - 2 (entries in [0, n)) into the
// labelled tree on n nodes.
Graph prufer_decode(std::span<const Node> sequence);
Graph random_tree(std::size_t n, Rng& rng);

// Preferential attachment where each link after the first is, with
// probability triad_p, a triad-closing link to a neighbour of the last
// preferential target. Seeded with a star on attach_m + 1 nodes, so
// triad_p = 0 gives the same edge count as barabasi_albert.
Graph holme_kim(std::size_t n, std::size_t attach_m, double triad_p, Rng& rng);

// Subgraph induced by center and its neighbours; center becomes node 0.
Graph ego_network(const Graph& g, Node center);

// Ego network of the heaviest node (lowest id on ties) in the expected-degree
// (Chung-Lu) model: pair (i, j) is linked with probability
// min(1, w_i w_j / sum(w)). Only the pairs inside the ego are realised.
Graph chung_lu_ego(std::span<const double> weights, Rng& rng);

Graph random_ego(const CorpusSpec& spec, Rng& rng);

}  // namespace hsgen
