#pragma once

#include "rieszwave/densela.hpp"
#include "rieszwave/fracops.hpp"
#include "rieszwave/problems.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace rieszwave {

/// Weight of the three-level average θu^{k+1} + (1-2θ)u^k + θu^{k-1}.
/// Stability is established for 1/4 <= θ <= 1; values in [0, 1/4) require
/// `allow_unsupported` and carry no stability guarantee.
class Theta {
public:
    /// Throws InvalidInput outside [1/4, 1] (or outside [0, 1] when
    /// allow_unsupported is set, in which case a diagnostic is emitted).
    explicit Theta(double value, bool allow_unsupported = false);

    double value() const noexcept { return value_; }
    bool supported() const noexcept { return value_ >= 0.25 && value_ <= 1.0; }

private:
    double value_;
};

/// How the second time level u^1 is produced.
enum class StartMode {
    /// Second-order Taylor start using the discrete operator on φ.
    taylor,
    /// Sample the exact solution at t = τ (problem must provide one).
    exact,
};

/// Number of steps T/τ; throws InvalidInput when not integral to 1e-12.
std::size_t step_count(double final_time, double tau);

struct SolverState1D {
    std::vector<double> u_prev;
    std::vector<double> u_curr;
    std::size_t k = 1;  // index of u_curr
    double tau = 0.0;
};

/// Time-independent matrices of the 1D weighted scheme,
///   M+ U^{k+1} = M0 U^k - M+ U^{k-1} + τ² F^k,
/// with M+ = I + θ c D A_α, M0 = 2I - (1-2θ) c D A_α, c = τ² κ_α / h^α.
/// M+ is factored once. Immutable and shareable across runs.
class SystemMatrices1D {
public:
    SystemMatrices1D(RieszStencil stencil, std::vector<double> coefficient, double tau, Theta theta);

    const RieszStencil& stencil() const noexcept { return stencil_; }
    std::span<const double> coefficient() const noexcept { return coefficient_; }
    double tau() const noexcept { return tau_; }
    Theta theta() const noexcept { return theta_; }
    std::size_t size() const noexcept { return stencil_.size(); }
    /// c = τ² κ_α / h^α.
    double operator_scale() const noexcept { return c_; }

    const DenseMatrix& m_plus() const noexcept { return m_plus_; }
    const DenseMatrix& m_mid() const noexcept { return m_mid_; }
    const LuFactors& m_plus_factors() const noexcept { return m_plus_lu_; }

private:
    RieszStencil stencil_;
    std::vector<double> coefficient_;
    double tau_;
    Theta theta_;
    double c_;
    DenseMatrix m_plus_;
    DenseMatrix m_mid_;
    LuFactors m_plus_lu_;
};

/// u^1 = φ + τψ + (τ²/2)[a ∇_h^α φ + f(·, 0)] at interior nodes.
std::vector<double> first_step(const WaveProblem1D& problem, const Grid1D& grid, double tau);

/// Throws SingularMatrix if M+ cannot be factored.
SystemMatrices1D assemble_systems(const WaveProblem1D& problem, const Grid1D& grid, double tau,
                                  Theta theta);

/// Advances `state` by one level using source samples f^k (k = state.k).
/// Returns the new current level.
std::span<const double> step(SolverState1D& state, const SystemMatrices1D& systems,
                             std::span<const double> source_k);

struct Snapshot1D {
    double time = 0.0;
    std::vector<double> values;
};

struct SolveOptions1D {
    StartMode start = StartMode::taylor;
    /// Keep every level u^0..u^{N_t}.
    bool keep_trajectory = false;
    /// Times (multiples of τ) at which to copy the field.
    std::vector<double> snapshot_times;
    /// Overrides problem.final_time.
    std::optional<double> final_time;
    /// Called for every level k = 0..N_t as soon as it is available.
    std::function<void(std::size_t, std::span<const double>)> observer;
};

struct SolveResult1D {
    std::vector<double> final_field;
    double final_time = 0.0;
    std::size_t steps = 0;
    std::vector<std::vector<double>> trajectory;  // empty unless requested
    std::vector<Snapshot1D> snapshots;
};

/// Full run: u^0 from φ, u^1 per options.start, remaining levels by `step`.
SolveResult1D solve(const WaveProblem1D& problem, const Grid1D& grid, double tau, Theta theta,
                    const SolveOptions1D& options = {});

}  // namespace rieszwave
