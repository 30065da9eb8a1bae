#include "permrec/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "permrec/assignment.hpp"
#include "permrec/errors.hpp"
#include "permrec/sensing.hpp"

namespace permrec {

namespace {

// argmax_Pi <Pi, M> with Pi[pi(i), i] = 1, i.e. maximize sum_i M[pi(i), i].
// In CostMatrix convention that is the LAP over M^T.
Permutation perm_inner_argmax(const DenseMatrix& m) {
    return lap_maximize(CostMatrix::from_matrix(m.transposed())).perm;
}

std::vector<std::size_t> ascending_order(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    return idx;
}

// Permutation pairing equal ranks of a and b: maximizes sum_i a[pi(i)] b[i]
// by the rearrangement inequality.
Permutation sort_match(const std::vector<double>& a, const std::vector<double>& b,
                       bool reverse_a) {
    std::vector<std::size_t> oa = ascending_order(a);
    if (reverse_a) std::reverse(oa.begin(), oa.end());
    const std::vector<std::size_t> ob = ascending_order(b);
    std::vector<std::size_t> map(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) map[ob[k]] = oa[k];
    return Permutation::from_mapping(std::move(map));
}

std::vector<double> column_mean(const DenseMatrix& m) {
    std::vector<double> r(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
        r[i] = s / static_cast<double>(m.cols());
    }
    return r;
}

std::vector<double> column_of(const DenseMatrix& m, std::size_t j) {
    std::vector<double> c(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
    return c;
}

double inner_with_perm(const std::vector<double>& a, const Permutation& p,
                       const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += a[p(i)] * b[i];
    return s;
}

}  // namespace

Permutation oracle_ml(const DenseMatrix& x, const DenseMatrix& y, const DenseMatrix& b_star) {
    if (x.cols() != b_star.rows() || y.cols() != b_star.cols() || x.rows() != y.rows())
        throw SizeMismatch("oracle_ml: incompatible shapes");
    const DenseMatrix xb = x * b_star;           // n x m
    const DenseMatrix cost = y * xb.transposed();  // n x n, cost[a][i] = <Y_a, (XB)_i>
    return perm_inner_argmax(cost);
}

DenseMatrix estimate_b(const Permutation& p, const DenseMatrix& x, const DenseMatrix& y) {
    return least_squares_solve(apply_rows(p, x), y);
}

Permutation init_sort(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.rows() != y.rows()) throw SizeMismatch("init_sort: row count mismatch");
    const std::vector<double> ry = column_mean(y);
    const std::vector<double> rx = column_mean(x);
    Permutation asc = sort_match(ry, rx, false);
    Permutation desc = sort_match(ry, rx, true);
    const double va = inner_with_perm(ry, asc, rx);
    const double vb = inner_with_perm(ry, desc, rx);
    return va * va >= vb * vb ? asc : desc;
}

void AdmmConfig::validate() const {
    if (rho && !(*rho > 0.0)) throw ConfigError("AdmmConfig: rho must be positive");
    if (t_max < 1) throw ConfigError("AdmmConfig: t_max >= 1 required");
}

AdmmTrace admm_solve(const DenseMatrix& x, const DenseMatrix& y, const AdmmConfig& cfg) {
    cfg.validate();
    const std::size_t n = x.rows();
    if (y.rows() != n) throw SizeMismatch("admm_solve: row count mismatch");
    const std::size_t p = x.cols(), m = y.cols();

    const Projector proj = orth_projector(x);
    const DenseMatrix& q = proj.basis();  // n x p, P_X = Q Q^T
    const DenseMatrix yyt = y * y.transposed();

    double rho = cfg.rho ? *cfg.rho : 0.0;
    if (!cfg.rho) {
        // 0.1 * ||Y Y^T P_X||_F / n
        rho = 0.1 * std::sqrt(frobenius_norm_sq((yyt * q) * q.transposed())) /
              static_cast<double>(n);
        if (!(rho > 0.0)) rho = 1e-12;
    }

    // Initialization pool: mean sort (both orientations), identity, and
    // column-pair sorts. Candidate count is capped by striding over pairs.
    std::vector<Permutation> pool;
    const std::vector<double> ry = column_mean(y);
    const std::vector<double> rx = column_mean(x);
    pool.push_back(sort_match(ry, rx, false));
    pool.push_back(sort_match(ry, rx, true));
    pool.push_back(Permutation::identity(n));
    const std::size_t pair_cap = 512;
    const std::size_t total_pairs = m * p;
    const std::size_t stride = total_pairs > pair_cap ? (total_pairs + pair_cap - 1) / pair_cap : 1;
    for (std::size_t pair = 0; pair < total_pairs; pair += stride) {
        const std::size_t j = pair / p, k = pair % p;
        const std::vector<double> yc = column_of(y, j);
        const std::vector<double> xc = column_of(x, k);
        pool.push_back(sort_match(yc, xc, false));
        pool.push_back(sort_match(yc, xc, true));
    }

    Permutation best = pool.front();
    double best_res = residual(best, x, y);
    for (std::size_t i = 1; i < pool.size(); ++i) {
        const double r = residual(pool[i], x, y);
        if (r < best_res) {
            best_res = r;
            best = pool[i];
        }
    }

    AdmmTrace trace;
    Permutation pi1 = best, pi2 = best;
    DenseMatrix mu(n, n);

    // cost(i-th column) pieces: data = Y Y^T Pi P_X as column gather + thin
    // products, consensus as rho at Pi entries, dual as -/+ mu.
    const auto update = [&](const Permutation& other, double mu_sign) {
        DenseMatrix gathered(n, n);  // (Y Y^T) * Pi_other: column i is YYt column other(i)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t i = 0; i < n; ++i) gathered(a, i) = yyt(a, other(i));
        DenseMatrix cost = (gathered * q) * q.transposed();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t i = 0; i < n; ++i) cost(a, i) += mu_sign * mu(a, i);
        for (std::size_t i = 0; i < n; ++i) cost(other(i), i) += rho;
        return perm_inner_argmax(cost);
    };

    for (std::size_t t = 0; t < cfg.t_max; ++t) {
        pi1 = update(pi2, -1.0);
        pi2 = update(pi1, +1.0);
        for (std::size_t i = 0; i < n; ++i) {
            mu(pi1(i), i) += rho;
            mu(pi2(i), i) -= rho;
        }
        const double r1 = residual(pi1, x, y);
        trace.objective_history.push_back(r1);
        trace.pi1_history.push_back(pi1);
        if (r1 < best_res) {
            best_res = r1;
            best = pi1;
        }
        const double r2 = residual(pi2, x, y);
        if (r2 < best_res) {
            best_res = r2;
            best = pi2;
        }
        trace.iterations_run = t + 1;
        if (pi1 == pi2) {
            trace.converged = true;
            break;
        }
    }
    trace.final = best;
    return trace;
}

}  // namespace permrec
