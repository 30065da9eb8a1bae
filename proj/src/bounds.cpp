#include "permrec/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "permrec/errors.hpp"
#include "permrec/sensing.hpp"

namespace permrec {

double TheoryConstants::alpha1() const { return 2.0 / std::log(1.0 / alpha0); }

double TheoryConstants::alpha2() const {
    return std::log(64.0 * std::pow(alpha0, -4.0) * std::log(1.0 / alpha0));
}

void TheoryConstants::validate() const {
    if (!(alpha0 > 0.0 && alpha0 < 1.0))
        throw ConfigError("TheoryConstants: alpha0 must lie strictly inside (0,1)");
    for (double v : {kappa, prop1_c, eps, thm4_c0, thm4_c1, thm4_c2, thm4_c3, thm5_c0,
                     thm5_c1, thm5_c2, thm5_c3, thm5_c4})
        if (!(v > 0.0)) throw ConfigError("TheoryConstants: constants must be positive");
}

double log_factorial(std::size_t k) {
    // Kahan summation keeps the tail stable for k up to ~1e6.
    double sum = 0.0, comp = 0.0;
    for (std::size_t j = 2; j <= k; ++j) {
        const double term = std::log(static_cast<double>(j)) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

double log_det_term(const DenseMatrix& b, double sigma_sq) {
    bool nonzero = false;
    for (double v : b.data())
        if (std::abs(v) >= 1e-300) {
            nonzero = true;
            break;
        }
    if (!nonzero) throw ZeroMatrix("log_det_term: B is numerically zero");
    double sum = 0.0;
    for (double lambda : singular_values(b)) sum += std::log1p(lambda * lambda / sigma_sq);
    return sum;
}

double required_snr(std::size_t n, double rho, double c) {
    return std::expm1(c / rho * std::log(static_cast<double>(n)));
}

bool thm1_inachievable(const DenseMatrix& b, double sigma_sq, std::size_t n,
                       double log_card_H) {
    if (!(log_card_H > 2.0))
        throw HypothesisViolated("thm1_inachievable: log |H| must exceed 2");
    return log_det_term(b, sigma_sq) < (log_card_H - 2.0) / static_cast<double>(n);
}

bool cor1_inachievable(const DenseMatrix& b, double sigma_sq, std::size_t n, std::size_t D) {
    if (D > n) throw HypothesisViolated("cor1_inachievable: D must lie in [0, n]");
    const double rhs =
        (log_factorial(n - D + 1) - std::log(4.0)) / static_cast<double>(n);
    return log_det_term(b, sigma_sq) <= rhs;
}

double minimax_dh_lower(const DenseMatrix& b, double sigma_sq, std::size_t n) {
    if (n < 2) throw HypothesisViolated("minimax_dh_lower: n >= 2 required");
    const double logdet = log_det_term(b, sigma_sq);
    const double numer = 0.5 * static_cast<double>(n) * logdet + std::log(2.0);

    // prefix snapshots of the same Kahan stream as log_factorial, so each
    // entry is bit-identical to the standalone call
    std::vector<double> lf(n + 2, 0.0);
    double sum = 0.0, comp = 0.0;
    for (std::size_t j = 2; j <= n + 1; ++j) {
        const double term = std::log(static_cast<double>(j)) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        lf[j] = sum;
    }

    double best = 0.0;
    for (std::size_t d = 0; d <= n; ++d) {
        const double denom = lf[n - d + 1];
        if (denom <= 0.0) continue;  // d >= n: covering has a single element
        const double value = (static_cast<double>(d) + 1.0) * (1.0 - numer / denom);
        best = std::max(best, value);
    }
    return best;
}

bool prop1_fails(const DenseMatrix& b, double sigma_sq, std::size_t n,
                 const TheoryConstants& consts) {
    if (n < 10) throw HypothesisViolated("prop1_fails: proposition requires n >= 10");
    consts.validate();
    const double rho = stable_rank(b);
    const double factor = 1.0 + consts.prop1_c / std::sqrt(rho);
    const double threshold =
        2.0 * std::log(static_cast<double>(n)) / (4.0 * factor * factor);
    return frobenius_norm_sq(b) / sigma_sq <= threshold;
}

bool thm3_succeeds(const DenseMatrix& b, double sigma_sq, std::size_t n,
                   const TheoryConstants& consts) {
    consts.validate();
    const double rho = stable_rank(b);
    const double logn = std::log(static_cast<double>(n));
    const double lhs = std::log(frobenius_norm_sq(b) / sigma_sq);
    const double kr = consts.kappa * rho;
    const double rhs =
        8.0 * logn / kr + std::log(std::max(kr, consts.alpha1() * logn)) + consts.alpha2();
    return lhs >= rhs;
}

bool thm4_succeeds_log(std::size_t n, std::size_t p, std::size_t m, double log_snr,
                       std::size_t r, const TheoryConstants& consts) {
    consts.validate();
    if (n < 2 * p || p == 0) throw HypothesisViolated("thm4_succeeds: requires n >= 2p");
    if (r == 0) throw HypothesisViolated("thm4_succeeds: rank must be positive");
    const double nd = static_cast<double>(n), pd = static_cast<double>(p);
    const double logn = std::log(nd);
    const bool cond1 =
        log_snr - 2.0 * nd / (nd - pd) * logn >= std::log(consts.thm4_c3);
    const double lhs = (std::log(static_cast<double>(m)) + log_snr) / consts.thm4_c0;
    const double rhs = (1.0 + consts.eps + nd / (consts.thm4_c1 * (nd - pd))) * logn +
                       consts.thm4_c2 * std::log(static_cast<double>(r));
    return cond1 && lhs >= rhs;
}

bool thm4_succeeds(std::size_t n, std::size_t p, std::size_t m, double snr,
                   std::size_t r, const TheoryConstants& consts) {
    if (!(snr > 0.0)) throw HypothesisViolated("thm4_succeeds: snr must be positive");
    return thm4_succeeds_log(n, p, m, std::log(snr), r, consts);
}

bool thm5_succeeds_log(std::size_t n, std::size_t p, std::size_t m, double log_snr,
                       double rho, std::size_t h_max, std::size_t r,
                       const TheoryConstants& consts) {
    consts.validate();
    if (n < 2 * p || p == 0) throw HypothesisViolated("thm5_succeeds: requires n >= 2p");
    if (static_cast<double>(h_max) * static_cast<double>(r) > static_cast<double>(n) / 8.0)
        throw HypothesisViolated("thm5_succeeds: requires h_max * rank <= n/8");
    (void)m;
    const double logn = std::log(static_cast<double>(n));
    const bool cond1 = log_snr > std::log(consts.thm5_c0);
    const bool cond2 = rho >= consts.thm5_c1 * (1.0 + consts.eps) * logn / consts.thm5_c2;
    const bool cond3 =
        log_snr >= consts.thm5_c3 * (1.0 + consts.eps) * logn / rho + consts.thm5_c4;
    return cond1 && cond2 && cond3;
}

bool thm5_succeeds(std::size_t n, std::size_t p, std::size_t m, double snr, double rho,
                   std::size_t h_max, std::size_t r, const TheoryConstants& consts) {
    if (!(snr > 0.0)) throw HypothesisViolated("thm5_succeeds: snr must be positive");
    return thm5_succeeds_log(n, p, m, std::log(snr), rho, h_max, r, consts);
}

namespace {

std::size_t numerical_rank(const DenseMatrix& b) {
    const std::vector<double> sv = singular_values(b);
    const double tol = 1e-12 * sv.front();
    std::size_t r = 0;
    for (double s : sv)
        if (s > tol) ++r;
    return std::max<std::size_t>(r, 1);
}

}  // namespace

ThresholdReport evaluate_thresholds(const DenseMatrix& b, double sigma_sq, std::size_t n,
                                    std::size_t p, std::size_t m, std::size_t D,
                                    std::size_t h_max, const TheoryConstants& consts) {
    consts.validate();
    ThresholdReport rep;
    rep.constants_used = consts;
    rep.D = D;
    rep.logdet = log_det_term(b, sigma_sq);
    rep.logdet_over_logn = rep.logdet / std::log(static_cast<double>(n));
    rep.thm1_fails = thm1_inachievable(b, sigma_sq, n, log_factorial(n));
    rep.cor1_fails_at_D = cor1_inachievable(b, sigma_sq, n, D);
    rep.minimax_dh_lower = minimax_dh_lower(b, sigma_sq, n);
    rep.prop1_fails = n >= 10 ? prop1_fails(b, sigma_sq, n, consts) : false;
    rep.thm3_succeeds = thm3_succeeds(b, sigma_sq, n, consts);
    const std::size_t r = numerical_rank(b);
    const double snr = snr_of(b, sigma_sq, m);
    rep.thm4_succeeds = thm4_succeeds(n, p, m, snr, r, consts);
    const double rho = stable_rank(b);
    if (static_cast<double>(h_max) * static_cast<double>(r) <= static_cast<double>(n) / 8.0)
        rep.thm5_succeeds = thm5_succeeds(n, p, m, snr, rho, h_max, r, consts);
    else
        rep.thm5_succeeds = false;
    return rep;
}

}  // namespace permrec
