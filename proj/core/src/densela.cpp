#include "rieszwave/densela.hpp"

#include "rieszwave/diagnostics.hpp"
#include "rieszwave/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rieszwave {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const DenseMatrix& m) {
    return {m.entries().data(), static_cast<Eigen::Index>(m.rows()),
            static_cast<Eigen::Index>(m.cols())};
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput(std::string(what) + ": shape mismatch");
}

constexpr std::size_t kEigenSizeWarning = 1024;

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw InvalidInput("DenseMatrix: entry count does not equal rows*cols");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
    DenseMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

void DenseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != cols_ || y.size() != rows_)
        throw InvalidInput("DenseMatrix::multiply: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* a = data_.data() + r * cols_;
        double sum = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) sum += a[c] * x[c];
        y[r] = sum;
    }
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(rows_);
    multiply(x, y);
    return y;
}

double DenseMatrix::norm_inf() const noexcept {
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double sum = 0.0;
        for (double v : row(r)) sum += std::abs(v);
        best = std::max(best, sum);
    }
    return best;
}

double DenseMatrix::max_abs() const noexcept {
    double best = 0.0;
    for (double v : data_) best = std::max(best, std::abs(v));
    return best;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidInput("matrix product: inner dimension mismatch");
    DenseMatrix c(a.rows(), b.cols());
    Eigen::Map<RowMajor> out(c.entries().data(), static_cast<Eigen::Index>(c.rows()),
                             static_cast<Eigen::Index>(c.cols()));
    out.noalias() = view(a) * view(b);
    return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "matrix sum");
    DenseMatrix c = a;
    auto out = c.entries();
    auto rhs = b.entries();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs[i];
    return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "matrix difference");
    DenseMatrix c = a;
    auto out = c.entries();
    auto rhs = b.entries();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs[i];
    return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix c = a;
    for (double& v : c.entries()) v *= s;
    return c;
}

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return k;
}

LuFactors lu_factor(const DenseMatrix& a) {
    if (!a.square()) throw InvalidInput("lu_factor: matrix is not square");
    const std::size_t n = a.rows();

    Eigen::PartialPivLU<RowMajor> lu(view(a));
    const RowMajor& packed = lu.matrixLU();

    const double scale = std::max(a.max_abs(), std::numeric_limits<double>::min());
    const double tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
    for (std::size_t i = 0; i < n; ++i) {
        const double pivot = packed(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        if (!(std::abs(pivot) > tol))
            throw SingularMatrix("lu_factor: pivot " + std::to_string(i) +
                                 " is zero to working precision");
    }

    LuFactors f;
    f.n_ = n;
    f.packed_ = DenseMatrix(n, n);
    Eigen::Map<RowMajor>(f.packed_.entries().data(), static_cast<Eigen::Index>(n),
                         static_cast<Eigen::Index>(n)) = packed;

    // Eigen stores P with PA = LU; P maps row index i of A to position perm(i).
    f.pivots_.resize(n);
    const auto& perm = lu.permutationP().indices();
    for (std::size_t i = 0; i < n; ++i)
        f.pivots_[static_cast<std::size_t>(perm(static_cast<Eigen::Index>(i)))] = i;
    return f;
}

void lu_solve_in_place(const LuFactors& factors, std::span<double> x) {
    const std::size_t n = factors.dimension();
    if (x.size() != n) throw InvalidInput("lu_solve: right-hand side length mismatch");

    thread_local std::vector<double> work;
    work.resize(n);
    const auto piv = factors.pivots();
    for (std::size_t i = 0; i < n; ++i) work[i] = x[piv[i]];

    const DenseMatrix& lu = factors.packed();
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = lu.row(i).data();
        double sum = work[i];
        for (std::size_t j = 0; j < i; ++j) sum -= r[j] * work[j];
        work[i] = sum;
    }
    for (std::size_t i = n; i-- > 0;) {
        const double* r = lu.row(i).data();
        double sum = work[i];
        for (std::size_t j = i + 1; j < n; ++j) sum -= r[j] * work[j];
        work[i] = sum / r[i];
    }
    std::copy(work.begin(), work.end(), x.begin());
}

std::vector<double> lu_solve(const LuFactors& factors, std::span<const double> b) {
    std::vector<double> x(b.begin(), b.end());
    lu_solve_in_place(factors, x);
    return x;
}

SymEig sym_eig(const DenseMatrix& a) {
    if (!a.square()) throw InvalidInput("sym_eig: matrix is not square");
    const std::size_t n = a.rows();
    if (n > kEigenSizeWarning)
        emit_diagnostic("sym_eig: dimension " + std::to_string(n) +
                        " exceeds the desk-scale limit of 1024");

    const double scale = a.norm_inf();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale)
                throw InvalidInput("sym_eig: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(view(a)));
    if (solver.info() != Eigen::Success) throw NumericalFailure("sym_eig: eigensolver did not converge");

    SymEig out;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.eigenvalues[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
        for (std::size_t r = 0; r < n; ++r)
            out.eigenvectors(r, i) =
                solver.eigenvectors()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
    }
    return out;
}

DenseMatrix spd_sqrt(const DenseMatrix& a) {
    const SymEig eig = sym_eig(a);
    const std::size_t n = a.rows();
    if (n > 0 && !(eig.eigenvalues.front() > 0.0))
        throw InvalidInput("spd_sqrt: matrix is not positive definite");

    std::vector<double> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(eig.eigenvalues[i]);

    DenseMatrix scaled = eig.eigenvectors;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scaled(r, c) *= root[c];
    DenseMatrix result = scaled * eig.eigenvectors.transpose();

    // Q D Q^T is symmetric in exact arithmetic; average to make it so bitwise.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * (result(i, j) + result(j, i));
            result(i, j) = s;
            result(j, i) = s;
        }
    return result;
}

}  // namespace rieszwave
