#include <cmath>

#include "doctest.h"
#include "hsgen/baselines.hpp"
#include "hsgen/error.hpp"

using namespace hsgen;

namespace {

double mean_clustering(const Graph& g) {
  double total = 0.0;
  for (double c : clustering_coefficients(g)) total += c;
  return total / static_cast<double>(g.num_nodes());
}

}  // namespace

TEST_CASE("G(n, p) extremes") {
  Rng rng(1);
  CHECK(erdos_renyi_gnp(5, 1.0, rng).num_edges() == 10);
  CHECK(erdos_renyi_gnp(5, 0.0, rng).num_edges() == 0);
  CHECK_THROWS_AS(erdos_renyi_gnp(5, 1.5, rng), InvalidConfig);
}

TEST_CASE("G(n, p) edge count follows the binomial mean") {
  Rng rng(2);
  const int runs = 10000;
  double total = 0.0;
  for (int i = 0; i < runs; ++i) total += static_cast<double>(erdos_renyi_gnp(100, 0.1, rng).num_edges());
  const double sigma_of_mean = std::sqrt(4950 * 0.1 * 0.9 / runs);
  CHECK(std::abs(total / runs - 495.0) <= 3.0 * sigma_of_mean);
}

TEST_CASE("G(n, m) is exact") {
  Rng rng(3);
  for (std::size_t m : {0, 1, 100, 2000, 4949, 4950}) CHECK(erdos_renyi_gnm(100, m, rng).num_edges() == m);
  CHECK_THROWS_AS(erdos_renyi_gnm(100, 4951, rng), InvalidConfig);
}

TEST_CASE("BA edge counts") {
  Rng rng(4);
  const Graph tree = barabasi_albert(50, 1, rng);
  CHECK(tree.num_edges() == 49);
  CHECK(is_connected(tree));
  // Star seed on 3 nodes (2 edges) plus 2 links for each of 97 arrivals.
  CHECK(barabasi_albert(100, 2, rng).num_edges() == 2 + 2 * 97);
  CHECK_THROWS_AS(barabasi_albert(5, 0, rng), InvalidConfig);
  CHECK_THROWS_AS(barabasi_albert(3, 3, rng), InvalidConfig);
}

TEST_CASE("BA forms hubs") {
  Rng rng(5);
  int heavy = 0;
  const int runs = 1000;
  for (int i = 0; i < runs; ++i) {
    const Graph g = barabasi_albert(500, 2, rng);
    const double avg = 2.0 * static_cast<double>(g.num_edges()) / 500.0;
    if (static_cast<double>(g.max_degree()) > 3.0 * avg) ++heavy;
  }
  CHECK(heavy >= 900);
}

TEST_CASE("WS lattice") {
  Rng rng(6);
  const Graph ring = watts_strogatz(10, 2, 0.0, rng);
  CHECK(ring.num_edges() == 10);
  for (Node v = 0; v < 10; ++v) CHECK(ring.has_edge(v, (v + 1) % 10));
  const Graph lattice = watts_strogatz(10, 4, 0.0, rng);
  CHECK(lattice.num_edges() == 20);
  for (Node v = 0; v < 10; ++v) CHECK(lattice.degree(v) == 4);
}

TEST_CASE("WS rewiring lowers clustering and keeps the edge count") {
  Rng rng(7);
  const Graph lattice = watts_strogatz(200, 4, 0.0, rng);
  const Graph rewired = watts_strogatz(200, 4, 1.0, rng);
  CHECK(rewired.num_edges() == 400);
  CHECK(mean_clustering(rewired) < mean_clustering(lattice));
  CHECK_THROWS_AS(watts_strogatz(10, 3, 0.1, rng), InvalidConfig);
  CHECK_THROWS_AS(watts_strogatz(10, 10, 0.1, rng), InvalidConfig);
  CHECK_THROWS_AS(watts_strogatz(10, 4, -0.1, rng), InvalidConfig);
}

TEST_CASE("baselines are seed-deterministic") {
  Rng a(8), b(8);
  CHECK(erdos_renyi_gnm(60, 200, a) == erdos_renyi_gnm(60, 200, b));
  CHECK(barabasi_albert(60, 3, a) == barabasi_albert(60, 3, b));
  CHECK(watts_strogatz(60, 6, 0.3, a) == watts_strogatz(60, 6, 0.3, b));
}
