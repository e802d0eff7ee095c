#pragma once

#include "rieszwave/densela.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rieszwave {

/// Order of a space-Riesz derivative, restricted to (1, 2].
class FractionalOrder {
public:
    /// Throws InvalidInput outside (1, 2].
    explicit FractionalOrder(double alpha);

    double value() const noexcept { return alpha_; }
    bool classical() const noexcept { return alpha_ == 2.0; }

    auto operator<=>(const FractionalOrder&) const = default;

private:
    double alpha_;
};

/// g_0..g_M, g_m = (-1)^m binom(alpha, m), by the multiplicative recurrence.
std::vector<double> grunwald_g(FractionalOrder alpha, std::size_t M);

/// φ_0..φ_M of the weighted-shifted approximation: φ_0 = (α/2) g_0,
/// φ_m = (α/2) g_m + ((2-α)/2) g_{m-1}. Requires M >= 1.
std::vector<double> phi_weights(FractionalOrder alpha, std::size_t M);

/// κ_α = 1 / (2 cos(απ/2)). Emits a diagnostic when |cos(απ/2)| < 1e-8.
double riesz_kappa(FractionalOrder alpha);

/// Discrete Riesz operator ∇_h^α = (-κ_α/h^α) A_α on n interior nodes with
/// homogeneous Dirichlet data. Immutable; safe to share between threads.
class RieszStencil {
public:
    /// Requires n >= 2 and h > 0.
    RieszStencil(FractionalOrder alpha, double h, std::size_t n);

    FractionalOrder alpha() const noexcept { return alpha_; }
    double kappa() const noexcept { return kappa_; }
    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return n_; }

    /// φ_0..φ_n.
    std::span<const double> phi() const noexcept { return phi_; }

    /// -κ_α / h^α, the positive factor in front of A_α.
    double scale() const noexcept { return scale_; }

    /// Dense symmetric A_α = B_α + B_α^T; the authoritative form for solves.
    const DenseMatrix& matrix() const noexcept { return a_; }

    /// Entry A_α(i, l) computed from the weight sequence.
    double entry(std::size_t i, std::size_t l) const noexcept;

private:
    FractionalOrder alpha_;
    double kappa_;
    double h_;
    std::size_t n_;
    double scale_;
    std::vector<double> phi_;
    DenseMatrix a_;
};

/// Toeplitz B_α: φ_1 on the diagonal, φ_0 on the first subdiagonal,
/// φ_{1+d} on superdiagonal d.
DenseMatrix assemble_B(const RieszStencil& stencil);

/// A_α = B_α + B_α^T.
DenseMatrix assemble_A(const RieszStencil& stencil);

/// out = (-κ_α/h^α) A_α u, summed in ascending index order from the weight
/// sequence (matrix-free). Throws InvalidInput on length mismatch.
void apply_riesz(const RieszStencil& stencil, std::span<const double> u, std::span<double> out);
std::vector<double> apply_riesz(const RieszStencil& stencil, std::span<const double> u);

}  // namespace rieszwave
