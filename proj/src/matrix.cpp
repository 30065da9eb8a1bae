#include "permrec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "permrec/errors.hpp"

namespace permrec {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw SizeMismatch("DenseMatrix: entry count " + std::to_string(data_.size()) +
                           " does not match " + std::to_string(rows_) + "x" +
                           std::to_string(cols_));
    require_finite();
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

void DenseMatrix::require_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) throw Error("DenseMatrix: non-finite entry");
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) throw SizeMismatch("matrix add: shape mismatch");
    DenseMatrix r(a.rows(), a.cols());
    for (std::size_t k = 0; k < r.data().size(); ++k) r.data()[k] = a.data()[k] + b.data()[k];
    return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) throw SizeMismatch("matrix sub: shape mismatch");
    DenseMatrix r(a.rows(), a.cols());
    for (std::size_t k = 0; k < r.data().size(); ++k) r.data()[k] = a.data()[k] - b.data()[k];
    return r;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw SizeMismatch("matrix mul: inner dimension mismatch");
    DenseMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix r(a.rows(), a.cols());
    for (std::size_t k = 0; k < r.data().size(); ++k) r.data()[k] = s * a.data()[k];
    return r;
}

double frobenius_norm_sq(const DenseMatrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return s;
}

double inner(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) throw SizeMismatch("inner: shape mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
    return s;
}

std::vector<double> singular_values(const DenseMatrix& a) {
    // work on the tall orientation; singular values are transpose-invariant
    DenseMatrix w = a.rows() >= a.cols() ? a : a.transposed();
    const std::size_t n = w.rows(), p = w.cols();

    // column-major copy for cache-friendly column rotations
    std::vector<std::vector<double>> col(p, std::vector<double>(n));
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < n; ++i) col[j][i] = w(i, j);

    constexpr double kTol = 1e-14;
    constexpr int kMaxSweeps = 60;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t i = 0; i + 1 < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    alpha += col[i][k] * col[i][k];
                    beta += col[j][k] * col[j][k];
                    gamma += col[i][k] * col[j][k];
                }
                if (alpha == 0.0 || beta == 0.0) continue;
                // a parallel remnant below working precision never
                // de-correlates; its singular value contribution is zero
                if (std::min(alpha, beta) <= 1e-30 * std::max(alpha, beta)) continue;
                if (std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
                converged = false;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vi = col[i][k], vj = col[j][k];
                    col[i][k] = cs * vi - sn * vj;
                    col[j][k] = sn * vi + cs * vj;
                }
            }
        }
    }
    if (!converged) throw ConvergenceFailure("singular_values: Jacobi sweeps exhausted");

    std::vector<double> sv(p);
    for (std::size_t j = 0; j < p; ++j) {
        double s = 0.0;
        for (double v : col[j]) s += v * v;
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

double stable_rank(const DenseMatrix& a) {
    bool nonzero = false;
    for (double v : a.data())
        if (std::abs(v) >= 1e-300) {
            nonzero = true;
            break;
        }
    if (!nonzero) throw ZeroMatrix("stable_rank: matrix is numerically zero");
    const std::vector<double> sv = singular_values(a);
    double energy = 0.0;
    for (double s : sv) energy += s * s;
    return energy / (sv.front() * sv.front());
}

namespace detail {

HouseholderQr::HouseholderQr(const DenseMatrix& a) : qr_(a), n_(a.rows()), p_(a.cols()) {
    if (n_ < p_) throw RankDeficient("HouseholderQr: fewer rows than columns");
    rdiag_.assign(p_, 0.0);
    for (std::size_t k = 0; k < p_; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n_; ++i) norm = std::hypot(norm, qr_(i, k));
        if (norm != 0.0) {
            if (qr_(k, k) < 0.0) norm = -norm;
            for (std::size_t i = k; i < n_; ++i) qr_(i, k) /= norm;
            qr_(k, k) += 1.0;
            for (std::size_t j = k + 1; j < p_; ++j) {
                double s = 0.0;
                for (std::size_t i = k; i < n_; ++i) s += qr_(i, k) * qr_(i, j);
                s = -s / qr_(k, k);
                for (std::size_t i = k; i < n_; ++i) qr_(i, j) += s * qr_(i, k);
            }
        }
        rdiag_[k] = -norm;
    }
}

double HouseholderQr::diag_ratio() const {
    double lo = std::abs(rdiag_[0]), hi = lo;
    for (double d : rdiag_) {
        lo = std::min(lo, std::abs(d));
        hi = std::max(hi, std::abs(d));
    }
    return hi == 0.0 ? 0.0 : lo / hi;
}

void HouseholderQr::require_full_rank() const {
    if (diag_ratio() < 1e-10)
        throw RankDeficient("QR: diagonal factor entry below 1e-10 x largest");
}

void HouseholderQr::apply_qt(DenseMatrix& m) const {
    for (std::size_t k = 0; k < p_; ++k) {
        if (qr_(k, k) == 0.0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < n_; ++i) s += qr_(i, k) * m(i, j);
            s = -s / qr_(k, k);
            for (std::size_t i = k; i < n_; ++i) m(i, j) += s * qr_(i, k);
        }
    }
}

void HouseholderQr::apply_q(DenseMatrix& m) const {
    for (std::size_t k = p_; k-- > 0;) {
        if (qr_(k, k) == 0.0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < n_; ++i) s += qr_(i, k) * m(i, j);
            s = -s / qr_(k, k);
            for (std::size_t i = k; i < n_; ++i) m(i, j) += s * qr_(i, k);
        }
    }
}

DenseMatrix HouseholderQr::thin_q() const {
    DenseMatrix q(n_, p_);
    for (std::size_t k = 0; k < p_; ++k) q(k, k) = 1.0;
    apply_q(q);
    return q;
}

DenseMatrix HouseholderQr::solve(const DenseMatrix& y) const {
    if (y.rows() != n_) throw SizeMismatch("QR solve: row count mismatch");
    require_full_rank();
    DenseMatrix z = y;
    apply_qt(z);
    DenseMatrix b(p_, y.cols());
    for (std::size_t j = 0; j < y.cols(); ++j) {
        for (std::size_t k = p_; k-- > 0;) {
            double s = z(k, j);
            for (std::size_t l = k + 1; l < p_; ++l) s -= qr_(k, l) * b(l, j);
            b(k, j) = s / rdiag_[k];
        }
    }
    return b;
}

}  // namespace detail

Projector::Projector(DenseMatrix basis, std::size_t ambient_dim)
    : basis_(std::move(basis)), ambient_dim_(ambient_dim) {
    if (basis_.rows() != ambient_dim_)
        throw SizeMismatch("Projector: basis rows must equal ambient dimension");
}

DenseMatrix Projector::apply(const DenseMatrix& m) const {
    if (m.rows() != ambient_dim_) throw SizeMismatch("Projector::apply: shape mismatch");
    return basis_ * (basis_.transposed() * m);
}

DenseMatrix Projector::apply_complement(const DenseMatrix& m) const {
    return m - apply(m);
}

double Projector::projected_norm_sq(const DenseMatrix& m) const {
    if (m.rows() != ambient_dim_)
        throw SizeMismatch("Projector::projected_norm_sq: shape mismatch");
    return frobenius_norm_sq(basis_.transposed() * m);
}

Projector orth_projector(const DenseMatrix& x) {
    detail::HouseholderQr qr(x);
    qr.require_full_rank();
    return Projector(qr.thin_q(), x.rows());
}

DenseMatrix least_squares_solve(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.rows() != y.rows()) throw SizeMismatch("least_squares_solve: row count mismatch");
    detail::HouseholderQr qr(x);
    return qr.solve(y);
}

}  // namespace permrec
