#pragma once

#include <vector>

#include "isoread/matrix.hpp"

namespace isoread {

// eigenvalues descending; column k of q pairs with eigenvalues[k]
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Mat q;
};

// Cyclic Jacobi. Requires a symmetric input; iterates until the off-diagonal
// Frobenius norm is <= 1e-12 * ||S||_F. Eigenvector sign fixed so the first
// entry above 1e-8 in magnitude is positive.
EigenDecomposition sym_eig(const Mat& s);

// Maximal runs of near-equal sorted eigenvalues: a gap joins a block when it
// is <= tol * max(1, |lambda|).
std::vector<std::vector<int>> group_eigenvalues(const EigenDecomposition& eig,
                                                double tol = 1e-12);

struct Block {
    double eigenvalue;   // representative (first index of the block)
    int multiplicity;
    Mat projector;       // sum of q_k q_k^T over the block
};

// blocks must partition {0..n-1}
std::vector<Block> block_projectors(const EigenDecomposition& eig,
                                    const std::vector<std::vector<int>>& blocks);

}  // namespace isoread
