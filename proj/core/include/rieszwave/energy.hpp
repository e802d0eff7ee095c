#pragma once

#include "rieszwave/densela.hpp"
#include "rieszwave/fracops.hpp"
#include "rieszwave/problems.hpp"
#include "rieszwave/solver1d.hpp"
#include "rieszwave/solver2d.hpp"

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace rieszwave {

/// h Σ u_i v_i over interior nodes. Throws InvalidInput on length mismatch.
double inner_1d(std::span<const double> u, std::span<const double> v, double h);
double norm_1d(std::span<const double> u, double h);

/// h_x h_y Σ Σ u_ij v_ij. Throws InvalidInput on shape mismatch.
double inner_2d(const Field2D& u, const Field2D& v, double h_x, double h_y);
double norm_2d(const Field2D& u, double h_x, double h_y);

/// Λ with Λ Λ = -∇_h^α, i.e. sqrt(-κ_α/h^α) spd_sqrt(-A_α). Built on first
/// request and cached per (α, n, h); the returned matrix is shared and
/// read-only.
std::shared_ptr<const DenseMatrix> riesz_sqrt(FractionalOrder alpha, double h, std::size_t n);

/// Everything energy_1d needs for one run.
class EnergyOps1D {
public:
    EnergyOps1D(FractionalOrder alpha, double h, std::vector<double> coefficient, double tau,
                Theta theta);

    const DenseMatrix& lambda() const noexcept { return *lambda_; }
    std::span<const double> coefficient() const noexcept { return coefficient_; }
    double h() const noexcept { return h_; }
    double tau() const noexcept { return tau_; }
    Theta theta() const noexcept { return theta_; }
    std::size_t size() const noexcept { return coefficient_.size(); }

    std::vector<double> apply_lambda(std::span<const double> u) const;

private:
    std::shared_ptr<const DenseMatrix> lambda_;
    std::vector<double> coefficient_;
    double h_;
    double tau_;
    Theta theta_;
};

EnergyOps1D make_energy_ops(const WaveProblem1D& problem, const Grid1D& grid, double tau,
                            Theta theta);

/// E^k = ‖(u^{k+1}-u^k)/τ‖² + ¼‖√a Λ(u^{k+1}+u^k)‖² + ¼(4θ-1)‖√a Λ(u^{k+1}-u^k)‖².
/// For θ < 1/4 the last weight is negative; the value is still returned.
double energy_1d(const EnergyOps1D& ops, std::span<const double> u_k,
                 std::span<const double> u_k1);

/// energy_1d of the error field numeric - exact at two consecutive levels.
double error_energy_1d(const EnergyOps1D& ops, std::span<const double> numeric_k,
                       std::span<const double> numeric_k1, std::span<const double> exact_k,
                       std::span<const double> exact_k1);

class EnergyOps2D {
public:
    EnergyOps2D(FractionalOrder alpha, FractionalOrder beta, const Grid2D& grid, Field2D coefficient_x,
                Field2D coefficient_y, double tau, Theta theta);

    const DenseMatrix& lambda_x() const noexcept { return *lambda_x_; }
    const DenseMatrix& lambda_y() const noexcept { return *lambda_y_; }
    const Field2D& coefficient_x() const noexcept { return a_; }
    const Field2D& coefficient_y() const noexcept { return b_; }
    double h_x() const noexcept { return h_x_; }
    double h_y() const noexcept { return h_y_; }
    double tau() const noexcept { return tau_; }
    Theta theta() const noexcept { return theta_; }

    /// Λ_α along every x-line.
    Field2D apply_lambda_x(const Field2D& u) const;
    /// Λ_β along every y-line.
    Field2D apply_lambda_y(const Field2D& u) const;

private:
    std::shared_ptr<const DenseMatrix> lambda_x_;
    std::shared_ptr<const DenseMatrix> lambda_y_;
    Field2D a_;
    Field2D b_;
    double h_x_;
    double h_y_;
    double tau_;
    Theta theta_;
};

EnergyOps2D make_energy_ops(const WaveProblem2D& problem, const Grid2D& grid, double tau,
                            Theta theta);

/// Six-term 2D energy: the 1D terms for each direction plus
/// θ²τ⁴‖√(ab) Λ_x Λ_y (u^{k+1}-u^k)/τ‖², the weight that makes the balance
/// exact for the factored (ADI) scheme.
double energy_2d(const EnergyOps2D& ops, const Field2D& u_k, const Field2D& u_k1);

struct EnergyReport {
    double tau = 0.0;
    double theta = 0.0;
    /// E^k for k = 0..N-1 (E^k uses levels k and k+1).
    std::vector<double> energies;
    /// r^k = E^k - E^{k-1} - (f^k, u^{k+1} - u^{k-1}) for k = 1..N-1;
    /// residuals[k-1] holds r^k.
    std::vector<double> residuals;
    /// e^{1.5kτ}[E^0 + 1.5τ Σ_{l=1..k} ‖f^l‖²] for k = 0..N-1.
    std::vector<double> gronwall_bounds;

    double max_abs_residual = 0.0;
    double max_energy = 0.0;
    /// max_k |E^k - E^0| / E^0 (zero when E^0 is zero).
    double max_relative_drift = 0.0;
    bool gronwall_holds = true;
    /// The balance identity is exact only for constant coefficients; for
    /// variable coefficients residuals are informational.
    bool constant_coefficients = false;
    bool theta_supported = true;
};

/// Throws InvalidInput for fewer than 3 levels or inconsistent lengths.
EnergyReport monitor_1d(const std::vector<std::vector<double>>& trajectory,
                        const WaveProblem1D& problem, const Grid1D& grid, const EnergyOps1D& ops);
EnergyReport monitor_2d(const std::vector<Field2D>& trajectory, const WaveProblem2D& problem,
                        const Grid2D& grid, const EnergyOps2D& ops);

/// Columns k,t,energy,balance_residual,gronwall_bound; residual is empty at k = 0.
void write_energy_csv(std::ostream& out, const EnergyReport& report);

struct StructureCheck {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

struct StructureReport {
    std::vector<StructureCheck> checks;
    bool all_passed() const noexcept;
};

/// Dense checks at oracle scale (n_x n_y ≤ kDirectSolveLimit): -A SPD for
/// both orders, commutativity of A_x A_y, Λ_x Λ_y and Λ_x A_y, Λ² = -∇,
/// the Kronecker spectrum of I⊗A_α, and -(∇u, u) > 0 on 100 random vectors.
StructureReport structure_checks(FractionalOrder alpha, FractionalOrder beta, std::size_t n_x,
                                 std::size_t n_y);

}  // namespace rieszwave
