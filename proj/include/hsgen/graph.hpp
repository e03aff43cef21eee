#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace hsgen {

using Node = std::int32_t;

// Undirected edge stored with u < v.
struct Edge {
  Node u;
  Node v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Node a, Node b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Simple undirected graph on nodes 0..n-1. Immutable after construction, so
// every statistic below is safe to evaluate concurrently.
class Graph {
 public:
  Graph() = default;

  // Builds from an edge list. Throws InvalidInput on self-loops, duplicate
  // edges, or out-of-range endpoints. Edge order does not matter; the stored
  // edge list is canonical (u < v, lexicographic).
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  // Sorted neighbour list.
  std::span<const Node> neighbors(Node u) const;

  bool has_edge(Node u, Node v) const;

  std::size_t degree(Node u) const;
  std::size_t max_degree() const noexcept;
  std::vector<std::size_t> degrees() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_.size() == b.adjacency_.size() && a.edges_ == b.edges_;
  }

 private:
  void check_node(Node u) const;

  std::vector<Edge> edges_;
  std::vector<std::vector<Node>> adjacency_;
};

// Local clustering coefficient, 2*T(u) / (d_u (d_u - 1)); 0 when d_u < 2.
double clustering_coefficient(const Graph& g, Node u);
std::vector<double> clustering_coefficients(const Graph& g);

// Number of triangles through u, via sorted adjacency intersection.
std::size_t triangles_through(const Graph& g, Node u);

bool is_connected(const Graph& g);

struct GraphStats {
  std::map<std::size_t, std::size_t> degree_histogram;
  std::vector<double> clustering_per_node;
  std::vector<std::array<std::int64_t, 15>> orbit_counts;
  double avg_degree = 0.0;
  double sparsity = 0.0;
};

GraphStats compute_stats(const Graph& g);

}  // namespace hsgen
