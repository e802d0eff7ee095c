#include "rieszwave/solver1d.hpp"

#include "rieszwave/diagnostics.hpp"
#include "rieszwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rieszwave {

Theta::Theta(double value, bool allow_unsupported) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw InvalidInput("theta must lie in [0, 1], got " + std::to_string(value));
    if (!supported()) {
        if (!allow_unsupported)
            throw InvalidInput("theta = " + std::to_string(value) +
                               " is below 1/4; stability is not established there");
        emit_diagnostic("theta = " + std::to_string(value) +
                        " is outside [1/4, 1]; no stability guarantee");
    }
}

std::size_t step_count(double final_time, double tau) {
    if (!(tau > 0.0)) throw InvalidInput("time step must be positive");
    if (!(final_time > 0.0)) throw InvalidInput("final time must be positive");
    const double ratio = final_time / tau;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-12 * std::max(1.0, ratio))
        throw InvalidInput("final time " + std::to_string(final_time) +
                           " is not an integral multiple of tau " + std::to_string(tau));
    return static_cast<std::size_t>(rounded);
}

SystemMatrices1D::SystemMatrices1D(RieszStencil stencil, std::vector<double> coefficient,
                                   double tau, Theta theta)
    : stencil_(std::move(stencil)), coefficient_(std::move(coefficient)), tau_(tau), theta_(theta) {
    const std::size_t n = stencil_.size();
    if (coefficient_.size() != n) throw InvalidInput("SystemMatrices1D: coefficient length mismatch");
    if (!(tau > 0.0)) throw InvalidInput("SystemMatrices1D: tau must be positive");

    c_ = tau * tau * stencil_.kappa() / std::pow(stencil_.h(), stencil_.alpha().value());
    const double th = theta.value();
    const DenseMatrix& a = stencil_.matrix();
    m_plus_ = DenseMatrix(n, n);
    m_mid_ = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double di = coefficient_[i];
        for (std::size_t l = 0; l < n; ++l) {
            const double dal = di * a(i, l);
            m_plus_(i, l) = th * c_ * dal;
            m_mid_(i, l) = -(1.0 - 2.0 * th) * c_ * dal;
        }
        m_plus_(i, i) += 1.0;
        m_mid_(i, i) += 2.0;
    }
    m_plus_lu_ = lu_factor(m_plus_);
}

std::vector<double> first_step(const WaveProblem1D& problem, const Grid1D& grid, double tau) {
    if (!(tau > 0.0)) throw InvalidInput("first_step: tau must be positive");
    const RieszStencil stencil(problem.alpha, grid.h(), grid.interior_count());
    const std::vector<double> phi = grid.sample(problem.initial_displacement);
    const std::vector<double> psi = grid.sample(problem.initial_velocity);
    const std::vector<double> a = sample_coefficient(problem.coefficient, grid);
    const std::vector<double> lap = apply_riesz(stencil, phi);

    std::vector<double> u1(phi.size());
    for (std::size_t i = 0; i < u1.size(); ++i) {
        const double f0 = problem.source(grid.node(i + 1), 0.0);
        u1[i] = phi[i] + tau * psi[i] + 0.5 * tau * tau * (a[i] * lap[i] + f0);
    }
    return u1;
}

SystemMatrices1D assemble_systems(const WaveProblem1D& problem, const Grid1D& grid, double tau,
                                  Theta theta) {
    RieszStencil stencil(problem.alpha, grid.h(), grid.interior_count());
    return SystemMatrices1D(std::move(stencil), sample_coefficient(problem.coefficient, grid), tau,
                            theta);
}

std::span<const double> step(SolverState1D& state, const SystemMatrices1D& systems,
                             std::span<const double> source_k) {
    const std::size_t n = systems.size();
    if (state.u_prev.size() != n || state.u_curr.size() != n || source_k.size() != n)
        throw InvalidInput("step: field length does not match the system size");

    std::vector<double> rhs = systems.m_mid().multiply(state.u_curr);
    const std::vector<double> back = systems.m_plus().multiply(state.u_prev);
    const double tau2 = state.tau * state.tau;
    for (std::size_t i = 0; i < n; ++i) rhs[i] = rhs[i] - back[i] + tau2 * source_k[i];

    lu_solve_in_place(systems.m_plus_factors(), rhs);
    state.u_prev = std::move(state.u_curr);
    state.u_curr = std::move(rhs);
    ++state.k;
    return state.u_curr;
}

SolveResult1D solve(const WaveProblem1D& problem, const Grid1D& grid, double tau, Theta theta,
                    const SolveOptions1D& options) {
    const double final_time = options.final_time.value_or(problem.final_time);
    const std::size_t steps = step_count(final_time, tau);

    std::vector<std::size_t> snapshot_levels;
    for (double t : options.snapshot_times) {
        const double r = t / tau;
        const double k = std::round(r);
        if (k < 0.0 || k > static_cast<double>(steps) || std::abs(r - k) > 1e-9 * std::max(1.0, r))
            throw InvalidInput("snapshot time " + std::to_string(t) + " is not a level of this run");
        snapshot_levels.push_back(static_cast<std::size_t>(k));
    }

    SolveResult1D result;
    result.final_time = final_time;
    result.steps = steps;

    auto record = [&](std::size_t k, std::span<const double> u) {
        if (options.keep_trajectory) result.trajectory.emplace_back(u.begin(), u.end());
        for (std::size_t s = 0; s < snapshot_levels.size(); ++s)
            if (snapshot_levels[s] == k)
                result.snapshots.push_back({options.snapshot_times[s], {u.begin(), u.end()}});
        if (options.observer) options.observer(k, u);
    };

    SolverState1D state;
    state.tau = tau;
    state.u_prev = grid.sample(problem.initial_displacement);
    if (options.start == StartMode::exact) {
        if (!problem.exact) throw InvalidInput("exact start requires a problem with an exact solution");
        const auto& exact = *problem.exact;
        state.u_curr = grid.sample([&](double x) { return exact(x, tau); });
    } else {
        state.u_curr = first_step(problem, grid, tau);
    }
    record(0, state.u_prev);
    record(1, state.u_curr);

    if (steps > 1) {
        const SystemMatrices1D systems = assemble_systems(problem, grid, tau, theta);
        std::vector<double> source(grid.interior_count());
        for (std::size_t k = 1; k < steps; ++k) {
            const double t = static_cast<double>(k) * tau;
            for (std::size_t i = 0; i < source.size(); ++i) source[i] = problem.source(grid.node(i + 1), t);
            record(k + 1, step(state, systems, source));
        }
    }
    result.final_field = std::move(state.u_curr);
    return result;
}

}  // namespace rieszwave
