#include "hsgen/graph.hpp"

#include <algorithm>
#include <string>

#include "hsgen/error.hpp"
#include "hsgen/orbits.hpp"

namespace hsgen {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : adjacency_(n) {
  for (Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n ||
        static_cast<std::size_t>(e.v) >= n) {
      throw InvalidInput("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                         ") out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) throw InvalidInput("self-loop on node " + std::to_string(e.u));
    e = make_edge(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw InvalidInput("duplicate edge (" + std::to_string(dup->u) + ", " +
                       std::to_string(dup->v) + ")");
  }
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t u = 0; u < n; ++u) adjacency_[u].reserve(deg[u]);
  for (const Edge& e : edges) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());
  edges_ = std::move(edges);
}

void Graph::check_node(Node u) const {
  if (u < 0 || static_cast<std::size_t>(u) >= adjacency_.size()) {
    throw InvalidNode("node " + std::to_string(u) + " not in graph of " +
                      std::to_string(adjacency_.size()) + " nodes");
  }
}

std::span<const Node> Graph::neighbors(Node u) const {
  check_node(u);
  return adjacency_[u];
}

bool Graph::has_edge(Node u, Node v) const {
  check_node(u);
  check_node(v);
  const auto& row = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const Node other = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
  return std::binary_search(row.begin(), row.end(), other);
}

std::size_t Graph::degree(Node u) const {
  check_node(u);
  return adjacency_[u].size();
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& row : adjacency_) best = std::max(best, row.size());
  return best;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(adjacency_.size());
  for (std::size_t u = 0; u < adjacency_.size(); ++u) out[u] = adjacency_[u].size();
  return out;
}

std::size_t triangles_through(const Graph& g, Node u) {
  const auto nu = g.neighbors(u);
  std::size_t count = 0;
  for (Node v : nu) {
    // Each triangle {u, v, w} is seen from v and from w; count it once (v < w).
    const auto nv = g.neighbors(v);
    auto a = std::upper_bound(nu.begin(), nu.end(), v);
    auto b = std::upper_bound(nv.begin(), nv.end(), v);
    while (a != nu.end() && b != nv.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++count;
        ++a;
        ++b;
      }
    }
  }
  return count;
}

double clustering_coefficient(const Graph& g, Node u) {
  const std::size_t d = g.degree(u);
  if (d < 2) return 0.0;
  const double pairs = static_cast<double>(d) * static_cast<double>(d - 1) / 2.0;
  return static_cast<double>(triangles_through(g, u)) / pairs;
}

std::vector<double> clustering_coefficients(const Graph& g) {
  std::vector<double> out(g.num_nodes());
  for (std::size_t u = 0; u < out.size(); ++u) {
    out[u] = clustering_coefficient(g, static_cast<Node>(u));
  }
  return out;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<Node> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Node u = stack.back();
    stack.pop_back();
    for (Node v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

GraphStats compute_stats(const Graph& g) {
  GraphStats stats;
  const std::size_t n = g.num_nodes();
  for (std::size_t d : g.degrees()) ++stats.degree_histogram[d];
  stats.clustering_per_node = clustering_coefficients(g);
  stats.orbit_counts = orbit_counts(g);
  if (n > 0) stats.avg_degree = 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(n);
  if (n > 1) {
    stats.sparsity = static_cast<double>(g.num_edges()) /
                     (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
  }
  return stats;
}

}  // namespace hsgen
