#include "rieszwave/fracops.hpp"

#include "rieszwave/diagnostics.hpp"
#include "rieszwave/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rieszwave {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw InvalidInput("fractional order must lie in (1, 2], got " + std::to_string(alpha));
}

std::vector<double> grunwald_g(FractionalOrder alpha, std::size_t M) {
    const double a = alpha.value();
    std::vector<double> g(M + 1);
    g[0] = 1.0;
    for (std::size_t m = 1; m <= M; ++m)
        g[m] = (1.0 - (a + 1.0) / static_cast<double>(m)) * g[m - 1];
    return g;
}

std::vector<double> phi_weights(FractionalOrder alpha, std::size_t M) {
    if (M < 1) throw InvalidInput("phi_weights: M must be at least 1");
    const double a = alpha.value();
    const std::vector<double> g = grunwald_g(alpha, M);
    std::vector<double> phi(M + 1);
    phi[0] = 0.5 * a * g[0];
    for (std::size_t m = 1; m <= M; ++m) phi[m] = 0.5 * a * g[m] + 0.5 * (2.0 - a) * g[m - 1];
    return phi;
}

double riesz_kappa(FractionalOrder alpha) {
    const double c = std::cos(alpha.value() * std::numbers::pi / 2.0);
    if (std::abs(c) < 1e-8)
        emit_diagnostic("riesz_kappa: |cos(alpha*pi/2)| < 1e-8 for alpha = " +
                        std::to_string(alpha.value()) + "; kappa is very large");
    return 1.0 / (2.0 * c);
}

RieszStencil::RieszStencil(FractionalOrder alpha, double h, std::size_t n)
    : alpha_(alpha), kappa_(riesz_kappa(alpha)), h_(h), n_(n) {
    if (n < 2) throw InvalidInput("RieszStencil: need at least 2 interior nodes");
    if (!(h > 0.0)) throw InvalidInput("RieszStencil: grid spacing must be positive");
    scale_ = -kappa_ / std::pow(h, alpha.value());
    phi_ = phi_weights(alpha, n);
    a_ = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) a_(i, l) = entry(i, l);
}

double RieszStencil::entry(std::size_t i, std::size_t l) const noexcept {
    // B(i, l) = φ_{l-i+1} for l >= i-1, zero below the first subdiagonal.
    double v = 0.0;
    if (l + 1 >= i) v += phi_[l + 1 - i];
    if (i + 1 >= l) v += phi_[i + 1 - l];
    return v;
}

DenseMatrix assemble_B(const RieszStencil& stencil) {
    const std::size_t n = stencil.size();
    const auto phi = stencil.phi();
    DenseMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = (i == 0 ? 0 : i - 1); l < n; ++l) b(i, l) = phi[l + 1 - i];
    return b;
}

DenseMatrix assemble_A(const RieszStencil& stencil) {
    const DenseMatrix b = assemble_B(stencil);
    return b + b.transpose();
}

void apply_riesz(const RieszStencil& stencil, std::span<const double> u, std::span<double> out) {
    const std::size_t n = stencil.size();
    if (u.size() != n || out.size() != n)
        throw InvalidInput("apply_riesz: field length does not match stencil size");
    if (u.data() == out.data()) {
        const std::vector<double> copy(u.begin(), u.end());
        apply_riesz(stencil, copy, out);
        return;
    }
    const double scale = stencil.scale();
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t l = 0; l < n; ++l) sum += stencil.entry(i, l) * u[l];
        out[i] = scale * sum;
    }
}

std::vector<double> apply_riesz(const RieszStencil& stencil, std::span<const double> u) {
    std::vector<double> out(u.size());
    apply_riesz(stencil, u, out);
    return out;
}

}  // namespace rieszwave
