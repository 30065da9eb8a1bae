#pragma once

#include <cstddef>
#include <vector>

#include "permrec/permutation.hpp"

namespace permrec {

/// Square profit matrix: costs[i*n + j] is the profit of assigning row i to
/// column j.
struct CostMatrix {
    std::size_t n = 0;
    std::vector<double> costs;

    CostMatrix() = default;
    CostMatrix(std::size_t n_, std::vector<double> costs_);
    static CostMatrix from_matrix(const DenseMatrix& m);

    double at(std::size_t i, std::size_t j) const { return costs[i * n + j]; }
};

struct LapResult {
    Permutation perm;
    double objective;
};

/// Exact maximizer of sum_i C[i][p(i)] over permutations.
///
/// Forward auction with epsilon scaling on an integer profit surrogate:
/// profits are quantized at 1e-13 x max|C| (below the 1e-12 x max|C| floor
/// of the smallest nonzero pairwise cost difference), scaled by (n+1), and
/// the epsilon schedule runs from max|profit|/2 down to 1 by factors of 4.
/// At eps = 1 the assignment is an exact optimum of the surrogate. The
/// returned objective is recomputed from the original floating-point costs.
LapResult lap_maximize(const CostMatrix& c);

/// Exhaustive maximum over all n! permutations, ties broken by the
/// lexicographically smallest mapping. Throws TooLarge for n > 9.
LapResult brute_force_lap(const CostMatrix& c);

}  // namespace permrec
