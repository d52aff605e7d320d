#pragma once

#include <map>
#include <vector>

#include "isoread/graph.hpp"

namespace isoread {

struct StableColoring {
    std::vector<int> colors;       // per node, values 0..num_colors-1
    std::map<int, int> histogram;  // color -> count
    int num_colors = 0;
};

// Refine an initial coloring to the 1-WL stable partition. Colors are renamed
// by first appearance in node order each round, so equal inputs get equal
// colorings regardless of the initial color names.
std::vector<int> refine_colors(const Graph& g, std::vector<int> colors);

// refine_colors from the uniform coloring
StableColoring color_refinement(const Graph& g);

// Refines the disjoint union so colors are comparable across the two graphs,
// then compares per-side histograms.
bool wl_equivalent(const Graph& g, const Graph& h);

Graph disjoint_union(const Graph& g, const Graph& h);

}  // namespace isoread
