#pragma once

#include <cstddef>
#include <vector>

namespace permrec {

/// Dense real matrix, row-major storage. Immutable by convention once built:
/// every operation in the library takes matrices by const reference and
/// returns fresh values, so instances are safe to share across trial workers.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    DenseMatrix transposed() const;

    /// Throws Error if any entry is NaN or infinite.
    void require_finite() const;

    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

/// Sum of squared entries.
double frobenius_norm_sq(const DenseMatrix& a);

/// <A, B> = trace(A^T B) = sum of elementwise products.
double inner(const DenseMatrix& a, const DenseMatrix& b);

/// Singular values of A in nonincreasing order, min(rows, cols) of them,
/// via one-sided Jacobi on the column set (values only, no vectors).
/// Throws ConvergenceFailure if the sweep count limit is exceeded.
std::vector<double> singular_values(const DenseMatrix& a);

/// ||A||_F^2 / ||A||_op^2, in [1, rank(A)]. Throws ZeroMatrix when every
/// entry is below 1e-300 in magnitude.
double stable_rank(const DenseMatrix& a);

/// Orthogonal projector onto a column space, held as an orthonormal basis.
class Projector {
  public:
    Projector(DenseMatrix basis, std::size_t ambient_dim);

    const DenseMatrix& basis() const { return basis_; }
    std::size_t ambient_dim() const { return ambient_dim_; }

    /// P * M = Q (Q^T M)
    DenseMatrix apply(const DenseMatrix& m) const;
    /// (I - P) * M
    DenseMatrix apply_complement(const DenseMatrix& m) const;
    /// ||P M||_F^2 = ||Q^T M||_F^2, cheaper than forming P M.
    double projected_norm_sq(const DenseMatrix& m) const;

  private:
    DenseMatrix basis_;
    std::size_t ambient_dim_;
};

/// Projector onto the column space of X, computed by Householder
/// orthonormalization. X must have full column rank (rows >= cols);
/// throws RankDeficient when a diagonal factor entry falls below
/// 1e-10 x the largest.
Projector orth_projector(const DenseMatrix& x);

/// Least squares solution argmin_B ||Y - X B||_F^2 via Householder QR.
DenseMatrix least_squares_solve(const DenseMatrix& x, const DenseMatrix& y);

namespace detail {

/// Householder QR factorization of an n x p matrix with n >= p.
/// Shared backend for orth_projector and least_squares_solve.
class HouseholderQr {
  public:
    explicit HouseholderQr(const DenseMatrix& a);

    /// Thin orthonormal factor, n x p.
    DenseMatrix thin_q() const;
    /// Solves min ||Y - A B||_F given the factorization.
    DenseMatrix solve(const DenseMatrix& y) const;
    /// Smallest |R_kk| / largest |R_kk|.
    double diag_ratio() const;
    void require_full_rank() const;

  private:
    DenseMatrix qr_;            // reflectors below diagonal, R above
    std::vector<double> rdiag_;
    std::size_t n_, p_;

    void apply_qt(DenseMatrix& m) const;
    void apply_q(DenseMatrix& m) const;
};

}  // namespace detail

}  // namespace permrec
