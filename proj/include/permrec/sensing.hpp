#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "permrec/matrix.hpp"
#include "permrec/permutation.hpp"
#include "permrec/rng.hpp"

namespace permrec {

/// Shape of the signal spectrum used to build B*.
///  - RankOne: all m columns identical (energy on one singular direction).
///  - FullRankEqual: column i is a multiple of the canonical basis vector
///    e_{i mod p}; for m <= p this is the orthogonal-columns protocol, for
///    m > p basis vectors are cycled.
///  - Explicit: a given list of singular values embedded on canonical bases.
/// In every case B* is rescaled by one scalar so the target snr is hit
/// exactly.
struct Spectrum {
    enum class Kind { RankOne, FullRankEqual, Explicit };
    Kind kind = Kind::RankOne;
    std::vector<double> values;  // Explicit only

    static Spectrum rank_one() { return {Kind::RankOne, {}}; }
    static Spectrum full_rank_equal() { return {Kind::FullRankEqual, {}}; }
    static Spectrum explicit_values(std::vector<double> v) {
        return {Kind::Explicit, std::move(v)};
    }

    std::string label() const;
    /// Parses "rank1", "fullrank" or "explicit:<csv>".
    static Spectrum parse(const std::string& text);
};

struct ModelParams {
    std::size_t n = 0;       // measurements per MV
    std::size_t p = 0;       // signal dimension
    std::size_t m = 1;       // number of measurement vectors
    std::size_t h = 0;       // exact Hamming displacement of Pi* from identity
    double snr = 1.0;        // ||B||_F^2 / (m sigma^2)
    double sigma_sq = 1.0;   // noise variance
    Spectrum spectrum;

    /// Enforces n >= 2p, h in {0} u [2, n], m >= 1, snr > 0, sigma_sq > 0.
    void validate() const;
};

struct SensingInstance {
    ModelParams params;
    DenseMatrix X;        // n x p
    DenseMatrix B_star;   // p x m
    Permutation Pi_star;  // size n
    DenseMatrix W;        // n x m
    DenseMatrix Y;        // n x m, equals apply_rows(Pi_star, X * B_star) + W
};

/// ||B||_F^2 / (m * sigma_sq). Throws ZeroMatrix for an all-zero B.
double snr_of(const DenseMatrix& b, double sigma_sq, std::size_t m);

/// Deterministic signal matrix for the given spectrum, scaled so that
/// snr_of(B, sigma_sq, m) equals snr exactly.
DenseMatrix make_b_star(const ModelParams& params);

/// One realized draw of Y = Pi* X B* + W with X ~ N(0,1) i.i.d. and
/// W ~ N(0, sigma^2) i.i.d. RNG consumption order is X, then Pi*, then W.
SensingInstance generate(const ModelParams& params, SeededRng& rng);

/// ||P^perp_{Pi X} Y||_F^2 = ||Y||_F^2 - ||P_{Pi X} Y||_F^2, the least
/// squares objective after profiling out B.
double residual(const Permutation& p, const DenseMatrix& x, const DenseMatrix& y);

}  // namespace permrec
