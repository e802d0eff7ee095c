#pragma once

#include "rieszwave/densela.hpp"
#include "rieszwave/fracops.hpp"
#include "rieszwave/problems.hpp"
#include "rieszwave/solver1d.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rieszwave {

/// Interior values u(i, j), i < nx, j < ny, stored x-fastest.
class Field2D {
public:
    Field2D() = default;
    Field2D(std::size_t nx, std::size_t ny, double fill = 0.0);
    Field2D(std::size_t nx, std::size_t ny, std::vector<double> values);

    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i + j * nx_]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i + j * nx_]; }

    /// The x-line at fixed j.
    std::span<double> x_line(std::size_t j) noexcept { return {values_.data() + j * nx_, nx_}; }
    std::span<const double> x_line(std::size_t j) const noexcept {
        return {values_.data() + j * nx_, nx_};
    }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::vector<double>& storage() noexcept { return values_; }

    bool same_shape(const Field2D& other) const noexcept {
        return nx_ == other.nx_ && ny_ == other.ny_;
    }

private:
    std::size_t nx_ = 0;
    std::size_t ny_ = 0;
    std::vector<double> values_;
};

/// ∇_{h_x}^α applied along every x-line.
Field2D apply_riesz_x(const RieszStencil& stencil_x, const Field2D& u);
/// ∇_{h_y}^β applied along every y-line.
Field2D apply_riesz_y(const RieszStencil& stencil_y, const Field2D& u);

struct SolverState2D {
    Field2D u_prev;
    Field2D u_curr;
    std::size_t k = 1;
    double tau = 0.0;
};

/// Shared data for every 2D stepper: stencils, sampled coefficients and the
/// scalar factors c_x = τ² κ_α / h_x^α, c_y = τ² κ_β / h_y^β.
class Scheme2D {
public:
    Scheme2D(const WaveProblem2D& problem, const Grid2D& grid, double tau, Theta theta);

    const RieszStencil& stencil_x() const noexcept { return stencil_x_; }
    const RieszStencil& stencil_y() const noexcept { return stencil_y_; }
    const Field2D& coefficient_x() const noexcept { return a_; }
    const Field2D& coefficient_y() const noexcept { return b_; }
    double tau() const noexcept { return tau_; }
    Theta theta() const noexcept { return theta_; }
    double c_x() const noexcept { return c_x_; }
    double c_y() const noexcept { return c_y_; }
    std::size_t nx() const noexcept { return stencil_x_.size(); }
    std::size_t ny() const noexcept { return stencil_y_.size(); }

private:
    RieszStencil stencil_x_;
    RieszStencil stencil_y_;
    Field2D a_;
    Field2D b_;
    double tau_;
    Theta theta_;
    double c_x_;
    double c_y_;
};

/// Cached line factorizations for the Douglas ADI splitting:
/// row j: I + θ c_x D_j A_α (size nx); column i: I + θ c_y diag(b_{i,·}) A_β
/// (size ny). Immutable after construction.
class AdiSystems {
public:
    explicit AdiSystems(Scheme2D scheme);

    const Scheme2D& scheme() const noexcept { return scheme_; }
    std::span<const LuFactors> row_factors() const noexcept { return rows_; }
    std::span<const LuFactors> column_factors() const noexcept { return columns_; }

private:
    Scheme2D scheme_;
    std::vector<LuFactors> rows_;
    std::vector<LuFactors> columns_;
};

/// Dense Kronecker forms A_x = I ⊗ A_α, A_y = A_β ⊗ I for oracle-scale grids.
struct KroneckerOps {
    DenseMatrix a_x;
    DenseMatrix a_y;
};

/// Largest interior unknown count accepted by the dense oracle steppers.
inline constexpr std::size_t kDirectSolveLimit = 4096;

/// Throws InvalidInput above kDirectSolveLimit unknowns.
KroneckerOps assemble_kronecker(const RieszStencil& stencil_x, const RieszStencil& stencil_y);

/// Dense oracle systems: the perturbed product operator
/// P = (I + θ c_x D̂ A_x)(I + θ c_y Ê A_y) and the unsplit operator
/// I + θ(c_x D̂ A_x + c_y Ê A_y), both factored once.
class DirectSystems2D {
public:
    explicit DirectSystems2D(Scheme2D scheme);

    const Scheme2D& scheme() const noexcept { return scheme_; }
    const KroneckerOps& kronecker() const noexcept { return ops_; }
    /// c_x D̂ A_x + c_y Ê A_y, the spatial part as it appears in M+.
    const DenseMatrix& spatial() const noexcept { return spatial_; }
    const DenseMatrix& perturbed() const noexcept { return perturbed_; }
    const DenseMatrix& unsplit() const noexcept { return unsplit_; }
    const LuFactors& perturbed_factors() const noexcept { return perturbed_lu_; }
    const LuFactors& unsplit_factors() const noexcept { return unsplit_lu_; }

private:
    Scheme2D scheme_;
    KroneckerOps ops_;
    DenseMatrix spatial_;
    DenseMatrix perturbed_;
    DenseMatrix unsplit_;
    LuFactors perturbed_lu_;
    LuFactors unsplit_lu_;
};

/// u^1 = φ + τψ + (τ²/2)[(a ∇_x + b ∇_y) φ + f(·,·,0)].
Field2D first_step_2d(const WaveProblem2D& problem, const Grid2D& grid, double tau);

/// One Douglas ADI step. Stage 1 solves every x-line for U*, stage 2 every
/// y-line for U^{k+1}; lines within a stage run through parallel_for.
/// Throws NumericalFailure naming the line on failure.
const Field2D& adi_step(SolverState2D& state, const AdiSystems& systems, const Field2D& source_k);

/// Dense solve of the perturbed product scheme; equals adi_step up to roundoff.
const Field2D& direct_perturbed_step(SolverState2D& state, const DirectSystems2D& systems,
                                     const Field2D& source_k);

/// Dense solve of the unsplit three-level scheme.
const Field2D& direct_unsplit_step(SolverState2D& state, const DirectSystems2D& systems,
                                   const Field2D& source_k);

enum class Method2D { adi, perturbed_direct, unsplit_direct };

/// "adi", "perturbed-direct", "unsplit-direct".
Method2D parse_method_2d(std::string_view name);
std::string_view method_name(Method2D method);

struct SolveOptions2D {
    Method2D method = Method2D::adi;
    StartMode start = StartMode::taylor;
    bool keep_trajectory = false;
    std::optional<double> final_time;
    std::function<void(std::size_t, const Field2D&)> observer;
};

struct SolveResult2D {
    Field2D final_field;
    double final_time = 0.0;
    std::size_t steps = 0;
    std::vector<Field2D> trajectory;
};

SolveResult2D solve_2d(const WaveProblem2D& problem, const Grid2D& grid, double tau, Theta theta,
                       const SolveOptions2D& options = {});

/// Source samples f(x_i, y_j, t) as a field.
Field2D sample_source(const WaveProblem2D& problem, const Grid2D& grid, double t);

}  // namespace rieszwave
