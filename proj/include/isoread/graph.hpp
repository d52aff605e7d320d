#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isoread/matrix.hpp"

namespace isoread {

// Undirected simple graph on nodes {0..n-1}. Adjacency matrix for O(1)
// lookup plus sorted neighbor lists for iteration.
struct Graph {
    int n = 0;
    std::vector<uint8_t> adj;            // n*n, symmetric, zero diagonal
    std::vector<std::vector<int>> nbr;   // sorted neighbor lists

    Graph() = default;
    explicit Graph(int n_) : n(n_), adj(static_cast<size_t>(n_) * n_, 0), nbr(n_) {}

    bool has_edge(int i, int j) const { return adj[static_cast<size_t>(i) * n + j] != 0; }

    void add_edge(int i, int j);

    int degree(int v) const { return static_cast<int>(nbr[v].size()); }

    int edge_count() const;

    // unordered edges (i, j) with i < j, lexicographic
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Graph& o) const { return n == o.n && adj == o.adj; }
};

struct Permutation {
    std::vector<int> map;  // i -> map[i]

    Permutation() = default;
    explicit Permutation(std::vector<int> m) : map(std::move(m)) {}

    int size() const { return static_cast<int>(map.size()); }
    int operator()(int i) const { return map[i]; }

    static Permutation identity(int n);
    bool is_valid() const;
    Permutation inverse() const;
};

// apply p then q: result(i) = q(p(i))
Permutation compose(const Permutation& p, const Permutation& q);

struct SplitMix64;
Permutation random_permutation(int n, SplitMix64& gen);

// Relabel: edge (i, j) of g becomes edge (p(i), p(j)) of the result.
Graph permute(const Graph& g, const Permutation& p);

Mat adjacency(const Graph& g);
Mat laplacian(const Graph& g);  // combinatorial D - A

// graph6, standard bit packing (upper triangle in column order). Short form
// for n <= 62, long form for n <= 258047. Parse errors carry the byte offset.
Graph parse_graph6(const std::string& bytes);
std::string write_graph6(const Graph& g);

// secondary text format: "n\nu v\n..."
Graph parse_edge_list(const std::string& text);
std::string write_edge_list(const Graph& g);

}  // namespace isoread
