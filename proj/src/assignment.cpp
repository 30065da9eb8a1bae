#include "permrec/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "permrec/errors.hpp"

namespace permrec {

CostMatrix::CostMatrix(std::size_t n_, std::vector<double> costs_)
    : n(n_), costs(std::move(costs_)) {
    if (costs.size() != n * n) throw SizeMismatch("CostMatrix: entry count != n*n");
    for (double v : costs)
        if (!std::isfinite(v)) throw Error("CostMatrix: non-finite entry");
}

CostMatrix CostMatrix::from_matrix(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw SizeMismatch("CostMatrix: matrix not square");
    return CostMatrix(m.rows(), m.data());
}

namespace {

// One auction round at a fixed epsilon: everyone starts unassigned, prices
// persist from previous rounds.
void auction_phase(std::size_t n, const std::vector<std::int64_t>& profit,
                   std::vector<std::int64_t>& price, std::vector<std::size_t>& person_to_obj,
                   std::int64_t eps) {
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> obj_to_person(n, kNone);
    std::vector<std::size_t> unassigned(n);
    for (std::size_t i = 0; i < n; ++i) {
        unassigned[i] = i;
        person_to_obj[i] = kNone;
    }

    std::size_t guard = 0;
    const std::size_t guard_limit = 50'000'000;
    while (!unassigned.empty()) {
        if (++guard > guard_limit)
            throw ConvergenceFailure("auction: bidding did not terminate");
        const std::size_t i = unassigned.back();
        unassigned.pop_back();

        std::int64_t best = std::numeric_limits<std::int64_t>::min();
        std::int64_t second = std::numeric_limits<std::int64_t>::min();
        std::size_t best_j = 0;
        const std::int64_t* row = profit.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t v = row[j] - price[j];
            if (v > best) {
                second = best;
                best = v;
                best_j = j;
            } else if (v > second) {
                second = v;
            }
        }
        if (n == 1) second = best;

        price[best_j] += best - second + eps;
        if (obj_to_person[best_j] != kNone) {
            unassigned.push_back(obj_to_person[best_j]);
            person_to_obj[obj_to_person[best_j]] = kNone;
        }
        obj_to_person[best_j] = i;
        person_to_obj[i] = best_j;
    }
}

}  // namespace

LapResult lap_maximize(const CostMatrix& c) {
    const std::size_t n = c.n;
    if (n == 0) return {Permutation::identity(0), 0.0};

    double maxabs = 0.0;
    for (double v : c.costs) maxabs = std::max(maxabs, std::abs(v));
    if (maxabs == 0.0) {
        return {Permutation::identity(n), 0.0};
    }

    // Integer surrogate: quantum 1e-13 * max|C|, then x(n+1) so that running
    // the epsilon schedule down to 1 certifies an exact surrogate optimum
    // (distinct surrogate objectives differ by multiples of n+1 > n*eps).
    const double quantum = 1e-13 * maxabs;
    const auto scale = static_cast<std::int64_t>(n + 1);
    std::vector<std::int64_t> profit(n * n);
    std::int64_t maxint = 0;
    for (std::size_t k = 0; k < n * n; ++k) {
        profit[k] = scale * static_cast<std::int64_t>(std::llround(c.costs[k] / quantum));
        maxint = std::max(maxint, std::abs(profit[k]));
    }

    std::vector<std::int64_t> price(n, 0);
    std::vector<std::size_t> person_to_obj(n);
    std::int64_t eps = std::max<std::int64_t>(1, maxint / 2);
    while (true) {
        auction_phase(n, profit, price, person_to_obj, eps);
        if (eps == 1) break;
        eps = std::max<std::int64_t>(1, eps / 4);
    }

    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) objective += c.at(i, person_to_obj[i]);
    return {Permutation::from_mapping(std::move(person_to_obj)), objective};
}

LapResult brute_force_lap(const CostMatrix& c) {
    const std::size_t n = c.n;
    if (n > 9) throw TooLarge("brute_force_lap: n > 9");
    if (n == 0) return {Permutation::identity(0), 0.0};

    std::vector<std::size_t> perm(n), best(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = best[i] = i;
    double best_obj = -std::numeric_limits<double>::infinity();
    do {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) obj += c.at(i, perm[i]);
        if (obj > best_obj) {
            best_obj = obj;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {Permutation::from_mapping(std::move(best)), best_obj};
}

}  // namespace permrec
