#include "hsgen/baselines.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "hsgen/error.hpp"

namespace hsgen {
namespace {

std::uint64_t pair_key(Node u, Node v) {
  const Edge e = make_edge(u, v);
  return (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidConfig(what);
}

}  // namespace

Graph erdos_renyi_gnp(std::size_t n, double p, Rng& rng) {
  require(n >= 2, "er: n must be >= 2");
  require(p >= 0.0 && p <= 1.0, "er: p must lie in [0, 1]");
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (bernoulli(rng, p)) edges.push_back({static_cast<Node>(u), static_cast<Node>(v)});
    }
  }
  return Graph(n, std::move(edges));
}

Graph erdos_renyi_gnm(std::size_t n, std::size_t m, Rng& rng) {
  require(n >= 2, "er: n must be >= 2");
  const std::size_t max_edges = n * (n - 1) / 2;
  require(m <= max_edges, "er: m=" + std::to_string(m) + " exceeds n(n-1)/2=" +
                              std::to_string(max_edges));
  // Sample the smaller of the edge set and its complement.
  const bool complement = m > max_edges / 2;
  const std::size_t draws = complement ? max_edges - m : m;
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(draws * 2);
  std::vector<Edge> picked;
  picked.reserve(draws);
  while (picked.size() < draws) {
    const Node u = static_cast<Node>(uniform_below(rng, n));
    const Node v = static_cast<Node>(uniform_below(rng, n));
    if (u == v) continue;
    if (chosen.insert(pair_key(u, v)).second) picked.push_back(make_edge(u, v));
  }
  if (!complement) return Graph(n, std::move(picked));
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!chosen.contains(pair_key(static_cast<Node>(u), static_cast<Node>(v)))) {
        edges.push_back({static_cast<Node>(u), static_cast<Node>(v)});
      }
    }
  }
  return Graph(n, std::move(edges));
}

Graph barabasi_albert(std::size_t n, std::size_t attach_m, Rng& rng) {
  require(attach_m >= 1, "ba: attach_m must be >= 1");
  require(n > attach_m, "ba: n must exceed attach_m");
  std::vector<Edge> edges;
  // Node v appears deg(v) times, so a uniform pick is degree-proportional.
  std::vector<Node> endpoints;
  endpoints.reserve(2 * attach_m * n);
  for (std::size_t leaf = 1; leaf <= attach_m; ++leaf) {
    edges.push_back({0, static_cast<Node>(leaf)});
    endpoints.push_back(0);
    endpoints.push_back(static_cast<Node>(leaf));
  }
  std::vector<Node> targets;
  for (std::size_t source = attach_m + 1; source < n; ++source) {
    targets.clear();
    while (targets.size() < attach_m) {
      const Node t = endpoints[uniform_below(rng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (Node t : targets) {
      edges.push_back({t, static_cast<Node>(source)});
      endpoints.push_back(t);
      endpoints.push_back(static_cast<Node>(source));
    }
  }
  return Graph(n, std::move(edges));
}

Graph watts_strogatz(std::size_t n, std::size_t ring_k, double rewire_p, Rng& rng) {
  require(n >= 2, "ws: n must be >= 2");
  require(ring_k % 2 == 0 && ring_k < n, "ws: ring_k must be even and below n");
  require(rewire_p >= 0.0 && rewire_p <= 1.0, "ws: rewire_p must lie in [0, 1]");
  std::vector<std::unordered_set<Node>> adj(n);
  auto link = [&](Node a, Node b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  auto unlink = [&](Node a, Node b) {
    adj[a].erase(b);
    adj[b].erase(a);
  };
  const std::size_t half = ring_k / 2;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= half; ++j) link(static_cast<Node>(u), static_cast<Node>((u + j) % n));
  }
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const Node near = static_cast<Node>(u);
      const Node far = static_cast<Node>((u + j) % n);
      if (!bernoulli(rng, rewire_p)) continue;
      if (adj[near].size() >= n - 1) continue;
      Node target;
      do {
        target = static_cast<Node>(uniform_below(rng, n));
      } while (target == near || adj[near].contains(target));
      unlink(near, far);
      link(near, target);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (Node v : adj[u]) {
      if (static_cast<Node>(u) < v) edges.push_back({static_cast<Node>(u), v});
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace hsgen
