#pragma once

#include <cstddef>

#include "hsgen/graph.hpp"
#include "hsgen/rng.hpp"

namespace hsgen {

// G(n, p): every pair independently with probability p.
Graph erdos_renyi_gnp(std::size_t n, double p, Rng& rng);

// G(n, m): m distinct pairs chosen uniformly. Throws InvalidConfig when
// m > n(n-1)/2.
Graph erdos_renyi_gnm(std::size_t n, std::size_t m, Rng& rng);

// Preferential attachment. Seeds with a star on attach_m + 1 nodes, then each
// arriving node links to attach_m distinct existing nodes drawn in proportion
// to degree. Edge count is attach_m * (n - attach_m).
Graph barabasi_albert(std::size_t n, std::size_t attach_m, Rng& rng);

// Ring lattice with ring_k / 2 neighbours per side; each lattice edge keeps
// its near endpoint and moves its far endpoint with probability rewire_p to
// a uniformly chosen node that is not already a neighbour.
Graph watts_strogatz(std::size_t n, std::size_t ring_k, double rewire_p, Rng& rng);

}  // namespace hsgen
