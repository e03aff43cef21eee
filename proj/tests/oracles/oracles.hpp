#pragma once

// Slow, independent reference implementations used only by the tests. None
// of these call into the library routine they check.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hsgen/graph.hpp"

namespace oracle {

using OrbitRow = std::array<std::int64_t, 15>;

// Classifies every 3- and 4-node subset by induced edge count and degree
// sequence. Orbit 0 is the degree.
std::vector<OrbitRow> brute_force_orbits(const hsgen::Graph& g);

// Local clustering from an adjacency matrix and explicit neighbour pairs.
std::vector<double> brute_force_clustering(const hsgen::Graph& g);

// Earth mover's distance between two equal-mass histograms on bins
// 0, w, 2w, ..., solved as a min-cost transportation problem.
double transport_emd(std::span<const double> a, std::span<const double> b, double bin_width);

// e^-lambda lambda^d / d! by repeated multiplication, in long double.
long double poisson_pmf_direct(std::size_t d, long double lambda);

// First k >= 1 with poisson_pmf_direct(k) < poisson_pmf_direct(0).
std::size_t truncation_by_enumeration(double lambda);

// e^-D (D+1) D^D / (n Gamma(D+1)) using tgamma and pow in long double.
long double node_probability_direct(std::size_t n, long double avg_degree);

// Component count via union-find over the edge list.
std::size_t component_count(std::size_t n, std::span<const hsgen::Edge> edges);

}  // namespace oracle
