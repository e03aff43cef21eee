#include "hsgen/orbits.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsgen {
namespace {

void classify_triple(const Graph& g, const Node* s, std::vector<OrbitVector>& out) {
  const bool ab = g.has_edge(s[0], s[1]);
  const bool ac = g.has_edge(s[0], s[2]);
  const bool bc = g.has_edge(s[1], s[2]);
  if (ab && ac && bc) {
    for (int i = 0; i < 3; ++i) ++out[s[i]][3];
    return;
  }
  const int deg[3] = {ab + ac, ab + bc, ac + bc};
  for (int i = 0; i < 3; ++i) ++out[s[i]][deg[i] == 2 ? 2 : 1];
}

void classify_quad(const Graph& g, const Node* s, std::vector<OrbitVector>& out) {
  int deg[4] = {0, 0, 0, 0};
  int edges = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (g.has_edge(s[i], s[j])) {
        ++deg[i];
        ++deg[j];
        ++edges;
      }
    }
  }
  const int max_deg = *std::max_element(deg, deg + 4);
  for (int i = 0; i < 4; ++i) {
    int orbit = 0;
    switch (edges) {
      case 3:
        if (max_deg == 3) {
          orbit = deg[i] == 3 ? 7 : 6;
        } else {
          orbit = deg[i] == 1 ? 4 : 5;
        }
        break;
      case 4:
        if (max_deg == 2) {
          orbit = 8;
        } else {
          orbit = deg[i] == 1 ? 9 : (deg[i] == 2 ? 10 : 11);
        }
        break;
      case 5:
        orbit = deg[i] == 2 ? 12 : 13;
        break;
      default:
        orbit = 14;
        break;
    }
    ++out[s[i]][orbit];
  }
}

bool touches(const Graph& g, Node u, const Node* sub, int size) {
  for (int i = 0; i < size; ++i) {
    if (sub[i] == u || g.has_edge(u, sub[i])) return true;
  }
  return false;
}

// ESU enumeration of connected subsets of size 3 and 4 whose smallest node
// is `root`. Each subset is reached exactly once.
void extend(const Graph& g, Node root, Node* sub, int size, std::vector<Node> ext,
            std::vector<OrbitVector>& out) {
  if (size == 3) classify_triple(g, sub, out);
  if (size == 4) {
    classify_quad(g, sub, out);
    return;
  }
  while (!ext.empty()) {
    const Node w = ext.back();
    ext.pop_back();
    std::vector<Node> next = ext;
    for (Node u : g.neighbors(w)) {
      if (u > root && !touches(g, u, sub, size)) next.push_back(u);
    }
    sub[size] = w;
    extend(g, root, sub, size + 1, std::move(next), out);
  }
}

void count_from_root(const Graph& g, Node root, std::vector<OrbitVector>& out) {
  Node sub[4] = {root, 0, 0, 0};
  std::vector<Node> ext;
  for (Node v : g.neighbors(root)) {
    if (v > root) ext.push_back(v);
  }
  // Pairs are orbit 0 and handled via degrees; start the walk at size 1 but
  // only record subsets of size >= 3.
  extend(g, root, sub, 1, std::move(ext), out);
}

void fill_degrees(const Graph& g, std::vector<OrbitVector>& out) {
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    out[u][0] = static_cast<std::int64_t>(g.degree(static_cast<Node>(u)));
  }
}

}  // namespace

std::vector<OrbitVector> orbit_counts_serial(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<OrbitVector> out(n, OrbitVector{});
  for (std::size_t r = 0; r < n; ++r) count_from_root(g, static_cast<Node>(r), out);
  fill_degrees(g, out);
  return out;
}

std::vector<OrbitVector> orbit_counts(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<OrbitVector> out(n, OrbitVector{});
#pragma omp parallel
  {
    std::vector<OrbitVector> local(n, OrbitVector{});
#pragma omp for schedule(dynamic, 16) nowait
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(n); ++r) {
      count_from_root(g, static_cast<Node>(r), local);
    }
    // Integer sums, so the merge order does not affect the result.
#pragma omp critical(hsgen_orbit_merge)
    for (std::size_t u = 0; u < n; ++u) {
      for (int o = 0; o < kNumOrbits; ++o) out[u][o] += local[u][o];
    }
  }
  fill_degrees(g, out);
  return out;
}

}  // namespace hsgen
