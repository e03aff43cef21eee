#include "hsgen/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "hsgen/error.hpp"

namespace hsgen {
namespace {

std::size_t uniform_in(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform_below(rng, hi - lo + 1));
}

std::vector<Graph> build_corpus(const CorpusSpec& spec,
                                const std::function<Graph(Rng&)>& make_one) {
  spec.validate();
  std::vector<Graph> out(spec.count);
  // Per-graph exceptions are collected and rethrown after the loop.
  std::vector<std::exception_ptr> failures(spec.count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(spec.count); ++i) {
    try {
      Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
      out[i] = make_one(rng);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

}  // namespace

std::string_view to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::kClus: return "clus";
    case CorpusKind::kEgo: return "ego";
    case CorpusKind::kGrid: return "grid";
    case CorpusKind::kTree: return "tree";
  }
  return "unknown";
}

CorpusKind parse_corpus_kind(std::string_view name) {
  for (CorpusKind k : {CorpusKind::kClus, CorpusKind::kEgo, CorpusKind::kGrid, CorpusKind::kTree}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidConfig("unknown corpus kind '" + std::string(name) + "'");
}

void CorpusSpec::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InvalidConfig(what);
  };
  require(count >= 1, "corpus count must be >= 1");
  switch (kind) {
    case CorpusKind::kGrid:
      require(grid_side_min >= 2 && grid_side_max <= 64 && grid_side_min <= grid_side_max,
              "grid side range must lie within [2, 64]");
      break;
    case CorpusKind::kTree:
      require(tree_size_min >= 3 && tree_size_max <= 100000 && tree_size_min <= tree_size_max,
              "tree size range must lie within [3, 100000]");
      break;
    case CorpusKind::kClus:
      require(clus_attach_m >= 1, "clus attach_m must be >= 1");
      require(clus_triad_p >= 0.0 && clus_triad_p <= 1.0, "clus triad_p must lie in [0, 1]");
      require(clus_nodes_min > clus_attach_m && clus_nodes_min <= clus_nodes_max,
              "clus node range must be non-empty and exceed attach_m");
      break;
    case CorpusKind::kEgo:
      require(ego_mean_nodes >= 10, "ego mean nodes must be >= 10");
      require(ego_population >= 10 * ego_mean_nodes, "ego population must be >= 10 * mean nodes");
      require(ego_exponent > 2.0, "ego exponent must exceed 2");
      require(ego_max_retries >= 1, "ego retries must be >= 1");
      break;
  }
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Node>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph prufer_decode(std::span<const Node> sequence) {
  const std::size_t n = sequence.size() + 2;
  std::vector<std::size_t> degree(n, 1);
  for (Node a : sequence) {
    if (a < 0 || static_cast<std::size_t>(a) >= n) {
      throw InvalidInput("pruefer entry " + std::to_string(a) + " out of range");
    }
    ++degree[a];
  }
  std::priority_queue<Node, std::vector<Node>, std::greater<>> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(static_cast<Node>(v));
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (Node a : sequence) {
    const Node leaf = leaves.top();
    leaves.pop();
    edges.push_back(make_edge(leaf, a));
    if (--degree[a] == 1) leaves.push(a);
  }
  const Node x = leaves.top();
  leaves.pop();
  edges.push_back(make_edge(x, leaves.top()));
  return Graph(n, std::move(edges));
}

Graph random_tree(std::size_t n, Rng& rng) {
  if (n < 2) throw InvalidConfig("tree needs at least 2 nodes");
  std::vector<Node> seq(n - 2);
  for (Node& s : seq) s = static_cast<Node>(uniform_below(rng, n));
  return prufer_decode(seq);
}

Graph holme_kim(std::size_t n, std::size_t attach_m, double triad_p, Rng& rng) {
  if (attach_m < 1 || n <= attach_m) throw InvalidConfig("holme-kim: need 1 <= attach_m < n");
  if (triad_p < 0.0 || triad_p > 1.0) throw InvalidConfig("holme-kim: triad_p must lie in [0, 1]");
  std::vector<std::vector<Node>> adj(n);
  std::vector<Node> endpoints;
  std::vector<Edge> edges;
  auto link = [&](Node a, Node b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    endpoints.push_back(a);
    endpoints.push_back(b);
    edges.push_back(make_edge(a, b));
  };
  for (std::size_t leaf = 1; leaf <= attach_m; ++leaf) link(0, static_cast<Node>(leaf));

  std::vector<Node> neighbourhood;
  for (std::size_t s = attach_m + 1; s < n; ++s) {
    const Node source = static_cast<Node>(s);
    auto linked = [&](Node v) {
      return std::find(adj[source].begin(), adj[source].end(), v) != adj[source].end();
    };
    auto preferential = [&]() {
      for (;;) {
        const Node t = endpoints[uniform_below(rng, endpoints.size())];
        if (t != source && !linked(t)) return t;
      }
    };
    Node target = preferential();
    link(source, target);
    while (adj[source].size() < attach_m) {
      if (bernoulli(rng, triad_p)) {
        neighbourhood.clear();
        for (Node w : adj[target]) {
          if (w != source && !linked(w)) neighbourhood.push_back(w);
        }
        if (!neighbourhood.empty()) {
          link(source, neighbourhood[uniform_below(rng, neighbourhood.size())]);
          continue;
        }
      }
      target = preferential();
      link(source, target);
    }
  }
  return Graph(n, std::move(edges));
}

Graph ego_network(const Graph& g, Node center) {
  const auto nbrs = g.neighbors(center);
  std::vector<Node> members;
  members.reserve(nbrs.size() + 1);
  members.push_back(center);
  members.insert(members.end(), nbrs.begin(), nbrs.end());
  std::vector<Node> local(g.num_nodes(), -1);
  for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = static_cast<Node>(k);
  std::vector<Edge> edges;
  for (Node u : members) {
    for (Node v : g.neighbors(u)) {
      if (u < v && local[v] >= 0) edges.push_back(make_edge(local[u], local[v]));
    }
  }
  return Graph(members.size(), std::move(edges));
}

Graph chung_lu_ego(std::span<const double> weights, Rng& rng) {
  if (weights.empty()) throw InvalidInput("chung_lu_ego: empty weight sequence");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const auto hub = static_cast<std::size_t>(
      std::max_element(weights.begin(), weights.end()) - weights.begin());
  auto link = [&](std::size_t i, std::size_t j) {
    return bernoulli(rng, std::min(1.0, weights[i] * weights[j] / total));
  };
  std::vector<std::size_t> members{hub};
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (j != hub && link(hub, j)) members.push_back(j);
  }
  std::vector<Edge> edges;
  for (std::size_t a = 1; a < members.size(); ++a) {
    edges.push_back({0, static_cast<Node>(a)});
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (link(members[a], members[b])) edges.push_back({static_cast<Node>(a), static_cast<Node>(b)});
    }
  }
  return Graph(members.size(), std::move(edges));
}

Graph random_ego(const CorpusSpec& spec, Rng& rng) {
  const double tail = spec.ego_exponent - 1.0;
  const double cutoff = static_cast<double>(spec.ego_mean_nodes - 1);
  std::vector<double> weights(spec.ego_population);
  for (std::size_t attempt = 0; attempt < spec.ego_max_retries; ++attempt) {
    for (double& w : weights) {
      // Pareto(x_min = 1) by inversion; 1 - u lies in (0, 1].
      w = std::min(cutoff, std::pow(1.0 - uniform01(rng), -1.0 / tail));
    }
    Graph ego = chung_lu_ego(weights, rng);
    if (ego.num_nodes() >= 3) return ego;
  }
  throw DegenerateSupport("ego: hub has fewer than 2 neighbours after " +
                          std::to_string(spec.ego_max_retries) + " attempts");
}

std::vector<Graph> grid_corpus(const CorpusSpec& spec) {
  return build_corpus(spec, [&](Rng& rng) {
    const std::size_t rows = uniform_in(rng, spec.grid_side_min, spec.grid_side_max);
    const std::size_t cols = uniform_in(rng, spec.grid_side_min, spec.grid_side_max);
    return grid_graph(rows, cols);
  });
}

std::vector<Graph> tree_corpus(const CorpusSpec& spec) {
  return build_corpus(spec, [&](Rng& rng) {
    return random_tree(uniform_in(rng, spec.tree_size_min, spec.tree_size_max), rng);
  });
}

std::vector<Graph> clus_corpus(const CorpusSpec& spec) {
  return build_corpus(spec, [&](Rng& rng) {
    const std::size_t n = uniform_in(rng, spec.clus_nodes_min, spec.clus_nodes_max);
    return holme_kim(n, spec.clus_attach_m, spec.clus_triad_p, rng);
  });
}

std::vector<Graph> ego_corpus(const CorpusSpec& spec) {
  return build_corpus(spec, [&](Rng& rng) { return random_ego(spec, rng); });
}

std::vector<Graph> synthesize(const CorpusSpec& spec) {
  switch (spec.kind) {
    case CorpusKind::kGrid: return grid_corpus(spec);
    case CorpusKind::kTree: return tree_corpus(spec);
    case CorpusKind::kClus: return clus_corpus(spec);
    case CorpusKind::kEgo: return ego_corpus(spec);
  }
  throw InvalidConfig("unknown corpus kind");
}

}  // namespace hsgen
