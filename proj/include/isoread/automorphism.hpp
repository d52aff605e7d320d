#pragma once

#include <cstdint>
#include <vector>

#include "isoread/graph.hpp"
#include "isoread/matrix.hpp"

namespace isoread {

constexpr int kDefaultAutCap = 50000;

// Stored automorphisms. Contains the identity and is closed under inverse.
// When capped is false the perms form the full automorphism group; when true
// they only generate a subgroup and downstream invariance claims are relative
// to it.
struct AutomorphismSet {
    std::vector<Permutation> perms;
    bool capped = false;
    int cap = kDefaultAutCap;

    int size() const { return static_cast<int>(perms.size()); }
};

AutomorphismSet enumerate_automorphisms(const Graph& g, int cap = kDefaultAutCap);

// Orbits of the stored permutations acting on ordered node pairs, in a
// canonical order: diagonal orbits first, then ascending (orbit size, sorted
// degree pair, adjacency bit, unordered BFS distance), residual ties broken
// by the smallest pair under the input labeling.
struct PairOrbitPartition {
    int n = 0;
    int m = 0;                  // orbit count
    std::vector<int> orbit_id;  // n*n, row-major, values 0..m-1

    int orbit(int i, int j) const { return orbit_id[static_cast<size_t>(i) * n + j]; }
};

PairOrbitPartition pair_orbits(const AutomorphismSet& aut, const Graph& g);

// S = sum_t c_t (M_t + M_t^T)/2 over orbit indicators M_t.
Mat build_S(const PairOrbitPartition& po, const std::vector<double>& coeffs);

// coefficients sampled i.i.d. uniform on [1,2] in canonical orbit order
Mat build_S(const PairOrbitPartition& po, uint64_t seed);

// permutation matrix, mat(i, j) = [j == p(i)]
Mat perm_matrix(const Permutation& p);

}  // namespace isoread
