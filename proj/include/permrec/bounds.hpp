#pragma once

#include <cstddef>
#include <vector>

#include "permrec/matrix.hpp"

namespace permrec {

/// Universal constants of the threshold conditions, including the explicit
/// numerics of the two realistic-case achievability conditions. All
/// overridable so every boolean below is reproducible; absolute truth values
/// are relative to this choice.
struct TheoryConstants {
    double kappa = 1.0;    // oracle achievability constant
    double alpha0 = 0.5;   // in (0,1); alpha1, alpha2 derive from it
    double prop1_c = 1.0;  // ML-failure constant
    double eps = 0.5;      // high-probability slack in the achievability conditions

    // realistic-case achievability (explicit restatement):
    // log(m snr)/c0 >= (1 + eps + n/(c1 (n-p))) log n + c2 log r, and
    // snr n^{-2n/(n-p)} >= c3
    double thm4_c0 = 380.0;
    double thm4_c1 = 190.0;
    double thm4_c2 = 0.5;
    double thm4_c3 = 1.0;

    // h_max-constrained refinement: snr > c0, stable rank >= c1 (1+eps) log n / c2,
    // log snr >= c3 (1+eps) log n / stable_rank + c4
    double thm5_c0 = 26.2;
    double thm5_c1 = 5.0;
    double thm5_c2 = 1.0;
    double thm5_c3 = 288.0;
    double thm5_c4 = 33.44;

    double alpha1() const;  // 2 / log(1/alpha0)
    double alpha2() const;  // log(64 alpha0^-4 log(1/alpha0))
    void validate() const;
};

/// Evaluated recovery/failure conditions for one parameter point.
struct ThresholdReport {
    double logdet = 0.0;
    double logdet_over_logn = 0.0;
    bool thm1_fails = false;        // minimax failure over H = P_n
    bool cor1_fails_at_D = false;   // approximate-recovery failure at queried D
    std::size_t D = 0;
    double minimax_dh_lower = 0.0;
    bool prop1_fails = false;
    bool thm3_succeeds = false;
    bool thm4_succeeds = false;
    bool thm5_succeeds = false;
    TheoryConstants constants_used;
};

/// Exact sum_{j=2}^{k} log j; no Stirling approximation.
double log_factorial(std::size_t k);

/// sum_i log(1 + lambda_i^2 / sigma_sq) over singular values of B; equals
/// log det(I + B^T B / sigma_sq). Throws ZeroMatrix.
double log_det_term(const DenseMatrix& b, double sigma_sq);

/// Required snr so that rho * log(1 + snr) = c * log n for the equal-spectrum
/// model: n^{c/rho} - 1.
double required_snr(std::size_t n, double rho, double c);

/// True iff every estimator fails with probability >= 1/2 over the candidate
/// set of log-cardinality log_card_H (requires log_card_H > 2).
bool thm1_inachievable(const DenseMatrix& b, double sigma_sq, std::size_t n,
                       double log_card_H);

/// True iff approximate recovery within Hamming distance D is inachievable.
bool cor1_inachievable(const DenseMatrix& b, double sigma_sq, std::size_t n, std::size_t D);

/// Minimax lower bound on E d_H: max_d (d+1)(1 - ((n/2) logdet + log 2) /
/// log (n-d+1)!) floored at zero; d with vanishing denominator excluded.
double minimax_dh_lower(const DenseMatrix& b, double sigma_sq, std::size_t n);

/// True iff the oracle ML estimator is predicted to fail with probability
/// >= 1/2. Requires n >= 10 (HypothesisViolated otherwise).
bool prop1_fails(const DenseMatrix& b, double sigma_sq, std::size_t n,
                 const TheoryConstants& consts);

/// Oracle achievability condition:
/// log(||B||_F^2 / sigma^2) >= 8 log n / (kappa rho) +
/// log(max(kappa rho, alpha1 log n)) + alpha2.
bool thm3_succeeds(const DenseMatrix& b, double sigma_sq, std::size_t n,
                   const TheoryConstants& consts);

/// Realistic-case achievability with explicit constants; r is the rank of B*.
/// Requires n >= 2p.
bool thm4_succeeds(std::size_t n, std::size_t p, std::size_t m, double snr,
                   std::size_t r, const TheoryConstants& consts);

/// Log-domain form of the same condition. With the explicit constants the
/// flip sits at log snr in the thousands, outside double range for snr
/// itself, so boundary studies work on log snr.
bool thm4_succeeds_log(std::size_t n, std::size_t p, std::size_t m, double log_snr,
                       std::size_t r, const TheoryConstants& consts);

/// h_max-constrained refinement; rho is the stable rank of B*, r its rank.
/// Requires n >= 2p and h_max * r <= n/8.
bool thm5_succeeds(std::size_t n, std::size_t p, std::size_t m, double snr, double rho,
                   std::size_t h_max, std::size_t r, const TheoryConstants& consts);

bool thm5_succeeds_log(std::size_t n, std::size_t p, std::size_t m, double log_snr,
                       double rho, std::size_t h_max, std::size_t r,
                       const TheoryConstants& consts);

/// Full report for a parameter point; B supplied by the caller (typically
/// make_b_star), D and h_max as queried.
ThresholdReport evaluate_thresholds(const DenseMatrix& b, double sigma_sq, std::size_t n,
                                    std::size_t p, std::size_t m, std::size_t D,
                                    std::size_t h_max, const TheoryConstants& consts);

}  // namespace permrec
