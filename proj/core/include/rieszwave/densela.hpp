#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace rieszwave {

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }

    std::span<double> entries() noexcept { return data_; }
    std::span<const double> entries() const noexcept { return data_; }

    DenseMatrix transpose() const;

    /// y = this * x, rows summed in ascending column order.
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    /// Maximum absolute row sum.
    double norm_inf() const noexcept;
    /// Largest absolute entry.
    double max_abs() const noexcept;

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

/// Kronecker product a ⊗ b.
DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b);

/// LU factors with partial pivoting, PA = LU with unit lower triangle.
/// Immutable once built; concurrent solves against one instance are safe.
class LuFactors {
public:
    std::size_t dimension() const noexcept { return n_; }
    /// Packed L (strictly lower, unit diagonal implied) and U (upper).
    const DenseMatrix& packed() const noexcept { return packed_; }
    /// Row permutation: row i of PA is row pivots()[i] of A.
    std::span<const std::size_t> pivots() const noexcept { return pivots_; }

private:
    friend LuFactors lu_factor(const DenseMatrix& a);
    std::size_t n_ = 0;
    DenseMatrix packed_;
    std::vector<std::size_t> pivots_;
};

/// Throws InvalidInput for a non-square matrix and SingularMatrix when a
/// pivot is zero to working precision.
LuFactors lu_factor(const DenseMatrix& a);

/// Solves A x = b. Throws InvalidInput on dimension mismatch.
std::vector<double> lu_solve(const LuFactors& factors, std::span<const double> b);
/// In-place variant; `x` holds b on entry and the solution on exit.
void lu_solve_in_place(const LuFactors& factors, std::span<double> x);

struct SymEig {
    std::vector<double> eigenvalues;  // ascending
    DenseMatrix eigenvectors;         // column i pairs with eigenvalues[i]
};

/// Full spectral decomposition of a symmetric matrix. Throws InvalidInput when
/// |A - A^T| exceeds 1e-12 relative to ‖A‖∞. Emits a diagnostic above n=1024.
SymEig sym_eig(const DenseMatrix& a);

/// Λ = Q sqrt(diag) Q^T, the SPD square root. Throws InvalidInput when the
/// smallest eigenvalue is not strictly positive.
DenseMatrix spd_sqrt(const DenseMatrix& a);

}  // namespace rieszwave
