#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "permrec/matrix.hpp"
#include "permrec/permutation.hpp"

namespace permrec {

/// ADMM knobs. rho defaults to 0.1 * ||Y Y^T P_X||_F / n when unset, so the
/// consensus penalty enters the update costs at a magnitude comparable to the
/// data term. Convergence rule is fixed: Pi1 == Pi2.
struct AdmmConfig {
    std::optional<double> rho;
    std::size_t t_max = 100;

    void validate() const;
};

struct AdmmTrace {
    std::size_t iterations_run = 0;
    bool converged = false;                  // Pi1 == Pi2 reached
    std::vector<double> objective_history;   // residual(Pi1^(t)) per iteration
    std::vector<Permutation> pi1_history;    // Pi1^(t) per iteration, for trace dumps
    Permutation final = Permutation::identity(0);
};

/// Oracle ML with known B*: argmax_Pi <Pi, Y B*^T X^T> via one exact linear
/// assignment solve. Minimizes ||Y - Pi X B*||_F^2 over permutations.
Permutation oracle_ml(const DenseMatrix& x, const DenseMatrix& y, const DenseMatrix& b_star);

/// Plug-in signal estimate B(Pi) = (Pi X)^dagger Y.
DenseMatrix estimate_b(const Permutation& p, const DenseMatrix& x, const DenseMatrix& y);

/// Sorting initializer: the permutation maximizing <r_Y, Pi r_X>^2 where r_Y
/// and r_X are the column means of Y and X. Both sort orientations are
/// evaluated since the square admits either sign alignment; ties go to the
/// ascending match.
Permutation init_sort(const DenseMatrix& x, const DenseMatrix& y);

/// ADMM on the biconvex splitting of min_Pi ||P^perp_{Pi X} Y||^2 with
/// consensus constraint Pi1 = Pi2 and dual mu (mu^(0) = 0). Each update is an
/// exact linear assignment solve; iteration stops at Pi1 == Pi2 or t_max.
/// The reported permutation is the lowest-residual iterate seen, including
/// the initializer.
///
/// Initialization takes the best-residual candidate from a pool containing
/// the mean-sort initializer (both orientations), the identity, and the
/// per-column-pair sorting matches of Y columns against X columns. The pool
/// follows the pre-relaxation form of the sorting objective; the mean-sort
/// candidate alone leaves the iteration outside the basin of the optimum for
/// most operating points and is kept as one candidate among the others.
AdmmTrace admm_solve(const DenseMatrix& x, const DenseMatrix& y, const AdmmConfig& cfg);

}  // namespace permrec
