#pragma once

#include "isoread/graph.hpp"

namespace isoread {

// Exact isomorphism test by individualization-refinement backtracking.
// Intended for the WL-hard fixtures here, so capped at n <= 64 per graph.
bool is_isomorphic(const Graph& g, const Graph& h);

}  // namespace isoread
