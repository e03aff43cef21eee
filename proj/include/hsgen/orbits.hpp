#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hsgen/graph.hpp"

namespace hsgen {

inline constexpr int kNumOrbits = 15;

using OrbitVector = std::array<std::int64_t, kNumOrbits>;

// Per-node counts of the 15 automorphism orbits of connected graphlets on
// 2..4 nodes, numbered as in ORCA / GraphRNN:
//
//   0  edge                      8  4-cycle
//   1  path P3, end              9  paw, pendant node
//   2  path P3, middle          10  paw, degree-2 triangle node
//   3  triangle                 11  paw, degree-3 node
//   4  path P4, end             12  diamond, degree-2 node
//   5  path P4, inner           13  diamond, degree-3 node
//   6  claw, leaf               14  K4
//   7  claw, centre
//
// Every connected induced subgraph is enumerated exactly once from its
// smallest node; roots are distributed over OpenMP threads.
std::vector<OrbitVector> orbit_counts(const Graph& g);

// Single-threaded reference of the same enumeration, kept for tests and the
// kernel benchmark.
std::vector<OrbitVector> orbit_counts_serial(const Graph& g);

}  // namespace hsgen
