#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "isoread/graph.hpp"

namespace isoread {

Graph gen_complete(int n);

// (two disjoint k-cycles, one 2k-cycle); k >= 3
std::pair<Graph, Graph> gen_cycle_pair(int k);

// outer cycle 0..4, inner nodes 5..9 with step-2 edges, spokes i -- i+5
Graph gen_petersen();

// Cayley graph on Z4 x Z4, connection set {±(1,0), ±(0,1), ±(1,1)}
Graph gen_shrikhande();

// 4x4 rook graph: cells adjacent iff same row or same column
Graph gen_rook4();

Graph gen_er(int n, double p, uint64_t seed);

// Cai-Fuerer-Immerman pair over a connected base: (untwisted, twisted on the
// first base edge). Node order: vertex gadgets in base-vertex order (even
// subsets of incident edges by increasing mask), then per base edge the four
// nodes (a_{e,u}, b_{e,u}, a_{e,v}, b_{e,v}) with u < v.
std::pair<Graph, Graph> gen_cfi_pair(const Graph& base);

// Godsil-McKay switching on cell C: every vertex outside C with exactly
// |C|/2 neighbors in C gets its adjacency to C complemented. C must induce
// a regular subgraph and every outside vertex must see 0, |C|/2 or |C| of C.
Graph gm_switch(const Graph& g, const std::vector<int>& cell);

// Exhaustive search (n <= 12) for a valid cell whose switch is not isomorphic
// to the input; subsets tried by ascending size, then lexicographically.
std::optional<std::vector<int>> find_gm_partition(const Graph& g);

}  // namespace isoread
