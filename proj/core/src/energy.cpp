#include "rieszwave/energy.hpp"

#include "rieszwave/errors.hpp"
#include "rieszwave/format.hpp"
#include "rieszwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <tuple>

namespace rieszwave {
namespace {

void require_same_length(std::span<const double> u, std::span<const double> v, const char* what) {
    if (u.size() != v.size()) throw InvalidInput(std::string(what) + ": length mismatch");
}

void require_same_shape(const Field2D& u, const Field2D& v, const char* what) {
    if (!u.same_shape(v)) throw InvalidInput(std::string(what) + ": shape mismatch");
}

// h Σ w_i v_i², the weighted squared norm ‖√w v‖².
double weighted_square(std::span<const double> w, std::span<const double> v, double cell) {
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) sum += w[i] * v[i] * v[i];
    return cell * sum;
}

std::vector<double> difference(std::span<const double> a, std::span<const double> b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

std::vector<double> sum(std::span<const double> a, std::span<const double> b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] + b[i];
    return d;
}

bool all_equal(std::span<const double> values) {
    return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

// Shared tail of both monitors once energies and source norms are known.
void finish_report(EnergyReport& report, std::span<const double> source_norms_sq) {
    const auto& e = report.energies;
    const std::size_t n = e.size();
    report.max_energy = *std::max_element(e.begin(), e.end());
    report.max_abs_residual = 0.0;
    for (double r : report.residuals) report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));

    report.max_relative_drift = 0.0;
    if (e[0] != 0.0)
        for (double ek : e)
            report.max_relative_drift = std::max(report.max_relative_drift, std::abs(ek - e[0]) / e[0]);

    report.gronwall_bounds.assign(n, 0.0);
    report.gronwall_holds = true;
    double forcing = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k >= 1) forcing += source_norms_sq[k];
        const double kt = static_cast<double>(k) * report.tau;
        const double bound = std::exp(1.5 * kt) * (e[0] + 1.5 * report.tau * forcing);
        report.gronwall_bounds[k] = bound;
        if (e[k] > bound * (1.0 + 1e-10) + 1e-300) report.gronwall_holds = false;
    }
}

double max_abs_difference(const DenseMatrix& a, const DenseMatrix& b) {
    return (a - b).norm_inf();
}

}  // namespace

double inner_1d(std::span<const double> u, std::span<const double> v, double h) {
    require_same_length(u, v, "inner_1d");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return h * s;
}

double norm_1d(std::span<const double> u, double h) { return std::sqrt(inner_1d(u, u, h)); }

double inner_2d(const Field2D& u, const Field2D& v, double h_x, double h_y) {
    require_same_shape(u, v, "inner_2d");
    double s = 0.0;
    const auto a = u.values();
    const auto b = v.values();
    for (std::size_t p = 0; p < a.size(); ++p) s += a[p] * b[p];
    return h_x * h_y * s;
}

double norm_2d(const Field2D& u, double h_x, double h_y) { return std::sqrt(inner_2d(u, u, h_x, h_y)); }

std::shared_ptr<const DenseMatrix> riesz_sqrt(FractionalOrder alpha, double h, std::size_t n) {
    using Key = std::tuple<double, std::size_t, double>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const DenseMatrix>> cache;

    const Key key{alpha.value(), n, h};
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const RieszStencil stencil(alpha, h, n);
    const DenseMatrix root = spd_sqrt(-1.0 * stencil.matrix());
    auto lambda = std::make_shared<const DenseMatrix>(std::sqrt(stencil.scale()) * root);
    cache.emplace(key, lambda);
    return lambda;
}

EnergyOps1D::EnergyOps1D(FractionalOrder alpha, double h, std::vector<double> coefficient,
                         double tau, Theta theta)
    : lambda_(riesz_sqrt(alpha, h, coefficient.size())),
      coefficient_(std::move(coefficient)),
      h_(h),
      tau_(tau),
      theta_(theta) {
    if (!(tau > 0.0)) throw InvalidInput("EnergyOps1D: tau must be positive");
}

std::vector<double> EnergyOps1D::apply_lambda(std::span<const double> u) const {
    require_same_length(u, coefficient_, "EnergyOps1D::apply_lambda");
    return lambda_->multiply(u);
}

EnergyOps1D make_energy_ops(const WaveProblem1D& problem, const Grid1D& grid, double tau,
                            Theta theta) {
    return EnergyOps1D(problem.alpha, grid.h(), sample_coefficient(problem.coefficient, grid), tau,
                       theta);
}

double energy_1d(const EnergyOps1D& ops, std::span<const double> u_k, std::span<const double> u_k1) {
    require_same_length(u_k, u_k1, "energy_1d");
    require_same_length(u_k, ops.coefficient(), "energy_1d");
    const double tau = ops.tau();
    const double h = ops.h();

    std::vector<double> rate = difference(u_k1, u_k);
    const std::vector<double> minus = ops.apply_lambda(rate);
    for (double& v : rate) v /= tau;
    const std::vector<double> plus = ops.apply_lambda(sum(u_k1, u_k));

    const double kinetic = inner_1d(rate, rate, h);
    const double mean = 0.25 * weighted_square(ops.coefficient(), plus, h);
    const double jump = 0.25 * (4.0 * ops.theta().value() - 1.0) *
                        weighted_square(ops.coefficient(), minus, h);
    return kinetic + mean + jump;
}

double error_energy_1d(const EnergyOps1D& ops, std::span<const double> numeric_k,
                       std::span<const double> numeric_k1, std::span<const double> exact_k,
                       std::span<const double> exact_k1) {
    require_same_length(numeric_k, exact_k, "error_energy_1d");
    require_same_length(numeric_k1, exact_k1, "error_energy_1d");
    return energy_1d(ops, difference(numeric_k, exact_k), difference(numeric_k1, exact_k1));
}

EnergyOps2D::EnergyOps2D(FractionalOrder alpha, FractionalOrder beta, const Grid2D& grid,
                         Field2D coefficient_x, Field2D coefficient_y, double tau, Theta theta)
    : lambda_x_(riesz_sqrt(alpha, grid.x().h(), grid.nx())),
      lambda_y_(riesz_sqrt(beta, grid.y().h(), grid.ny())),
      a_(std::move(coefficient_x)),
      b_(std::move(coefficient_y)),
      h_x_(grid.x().h()),
      h_y_(grid.y().h()),
      tau_(tau),
      theta_(theta) {
    if (!(tau > 0.0)) throw InvalidInput("EnergyOps2D: tau must be positive");
    if (a_.nx() != grid.nx() || a_.ny() != grid.ny() || !a_.same_shape(b_))
        throw InvalidInput("EnergyOps2D: coefficient shape does not match the grid");
}

Field2D EnergyOps2D::apply_lambda_x(const Field2D& u) const {
    require_same_shape(u, a_, "apply_lambda_x");
    Field2D out(u.nx(), u.ny());
    for (std::size_t j = 0; j < u.ny(); ++j) lambda_x_->multiply(u.x_line(j), out.x_line(j));
    return out;
}

Field2D EnergyOps2D::apply_lambda_y(const Field2D& u) const {
    require_same_shape(u, a_, "apply_lambda_y");
    const DenseMatrix& l = *lambda_y_;
    Field2D out(u.nx(), u.ny());
    for (std::size_t j = 0; j < u.ny(); ++j) {
        auto dst = out.x_line(j);
        for (std::size_t m = 0; m < u.ny(); ++m) {
            const double w = l(j, m);
            const auto src = u.x_line(m);
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w * src[i];
        }
    }
    return out;
}

EnergyOps2D make_energy_ops(const WaveProblem2D& problem, const Grid2D& grid, double tau,
                            Theta theta) {
    Field2D a(grid.nx(), grid.ny(), sample_coefficient(problem.coefficient_x, grid));
    Field2D b(grid.nx(), grid.ny(), sample_coefficient(problem.coefficient_y, grid));
    return EnergyOps2D(problem.alpha, problem.beta, grid, std::move(a), std::move(b), tau, theta);
}

double energy_2d(const EnergyOps2D& ops, const Field2D& u_k, const Field2D& u_k1) {
    require_same_shape(u_k, u_k1, "energy_2d");
    const double tau = ops.tau();
    const double th = ops.theta().value();
    const double cell = ops.h_x() * ops.h_y();
    const std::size_t nx = u_k.nx();
    const std::size_t ny = u_k.ny();

    Field2D jump(nx, ny, difference(u_k1.values(), u_k.values()));
    Field2D mean(nx, ny, sum(u_k1.values(), u_k.values()));
    Field2D rate(nx, ny, jump.storage());
    for (double& v : rate.values()) v /= tau;

    const auto a = ops.coefficient_x().values();
    const auto b = ops.coefficient_y().values();
    std::vector<double> ab(a.size());
    for (std::size_t p = 0; p < ab.size(); ++p) ab[p] = a[p] * b[p];

    const double kinetic = inner_2d(rate, rate, ops.h_x(), ops.h_y());
    const double x_mean = 0.25 * weighted_square(a, ops.apply_lambda_x(mean).values(), cell);
    const double x_jump = 0.25 * (4.0 * th - 1.0) * weighted_square(a, ops.apply_lambda_x(jump).values(), cell);
    const double y_mean = 0.25 * weighted_square(b, ops.apply_lambda_y(mean).values(), cell);
    const double y_jump = 0.25 * (4.0 * th - 1.0) * weighted_square(b, ops.apply_lambda_y(jump).values(), cell);
    // The product operator adds θ²τ⁴ ab ∇x∇y (u^{k+1} - 2u^k + u^{k-1}) to the
    // τ²-scaled equation, so the conserved cross term carries θ²τ⁴, not θ²τ⁶.
    const Field2D mixed = ops.apply_lambda_x(ops.apply_lambda_y(rate));
    const double cross = th * th * std::pow(tau, 4) * weighted_square(ab, mixed.values(), cell);
    return kinetic + x_mean + x_jump + y_mean + y_jump + cross;
}

EnergyReport monitor_1d(const std::vector<std::vector<double>>& trajectory,
                        const WaveProblem1D& problem, const Grid1D& grid, const EnergyOps1D& ops) {
    if (trajectory.size() < 3) throw InvalidInput("energy monitor needs at least 3 time levels");
    for (const auto& level : trajectory)
        require_same_length(level, ops.coefficient(), "monitor_1d");

    const std::size_t n = trajectory.size() - 1;
    EnergyReport report;
    report.tau = ops.tau();
    report.theta = ops.theta().value();
    report.theta_supported = ops.theta().supported();
    report.constant_coefficients = all_equal(ops.coefficient());
    report.energies.assign(n, 0.0);
    report.residuals.assign(n - 1, 0.0);
    std::vector<double> source_norms_sq(n, 0.0);

    parallel_for(n, [&](std::size_t k) {
        report.energies[k] = energy_1d(ops, trajectory[k], trajectory[k + 1]);
        const double t = static_cast<double>(k) * ops.tau();
        const std::vector<double> f = grid.sample([&](double x) { return problem.source(x, t); });
        source_norms_sq[k] = inner_1d(f, f, grid.h());
    });
    for (std::size_t k = 1; k < n; ++k) {
        const double t = static_cast<double>(k) * ops.tau();
        const std::vector<double> f = grid.sample([&](double x) { return problem.source(x, t); });
        const double work = inner_1d(f, difference(trajectory[k + 1], trajectory[k - 1]), grid.h());
        report.residuals[k - 1] = report.energies[k] - report.energies[k - 1] - work;
    }
    finish_report(report, source_norms_sq);
    return report;
}

EnergyReport monitor_2d(const std::vector<Field2D>& trajectory, const WaveProblem2D& problem,
                        const Grid2D& grid, const EnergyOps2D& ops) {
    if (trajectory.size() < 3) throw InvalidInput("energy monitor needs at least 3 time levels");
    for (const auto& level : trajectory) require_same_shape(level, ops.coefficient_x(), "monitor_2d");

    const std::size_t n = trajectory.size() - 1;
    EnergyReport report;
    report.tau = ops.tau();
    report.theta = ops.theta().value();
    report.theta_supported = ops.theta().supported();
    report.constant_coefficients =
        all_equal(ops.coefficient_x().values()) && all_equal(ops.coefficient_y().values());
    report.energies.assign(n, 0.0);
    report.residuals.assign(n - 1, 0.0);
    std::vector<double> source_norms_sq(n, 0.0);

    const double hx = grid.x().h();
    const double hy = grid.y().h();
    parallel_for(n, [&](std::size_t k) {
        report.energies[k] = energy_2d(ops, trajectory[k], trajectory[k + 1]);
        const Field2D f = sample_source(problem, grid, static_cast<double>(k) * ops.tau());
        source_norms_sq[k] = inner_2d(f, f, hx, hy);
    });
    for (std::size_t k = 1; k < n; ++k) {
        const Field2D f = sample_source(problem, grid, static_cast<double>(k) * ops.tau());
        const Field2D change(grid.nx(), grid.ny(),
                             difference(trajectory[k + 1].values(), trajectory[k - 1].values()));
        report.residuals[k - 1] = report.energies[k] - report.energies[k - 1] - inner_2d(f, change, hx, hy);
    }
    finish_report(report, source_norms_sq);
    return report;
}

void write_energy_csv(std::ostream& out, const EnergyReport& report) {
    out << "k,t,energy,balance_residual,gronwall_bound\n";
    for (std::size_t k = 0; k < report.energies.size(); ++k) {
        out << k << ',' << format_real(static_cast<double>(k) * report.tau) << ','
            << format_real(report.energies[k]) << ',';
        if (k >= 1) out << format_real(report.residuals[k - 1]);
        out << ',' << format_real(report.gronwall_bounds[k]) << '\n';
    }
}

bool StructureReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const StructureCheck& c) { return c.passed; });
}

StructureReport structure_checks(FractionalOrder alpha, FractionalOrder beta, std::size_t n_x,
                                 std::size_t n_y) {
    if (n_x * n_y > kDirectSolveLimit)
        throw InvalidInput("structure checks are limited to " + std::to_string(kDirectSolveLimit) +
                           " unknowns");
    const double h_x = 1.0 / static_cast<double>(n_x + 1);
    const double h_y = 1.0 / static_cast<double>(n_y + 1);
    const RieszStencil sx(alpha, h_x, n_x);
    const RieszStencil sy(beta, h_y, n_y);
    StructureReport report;
    auto add = [&](std::string name, double measured, double tolerance, bool passed) {
        report.checks.push_back({std::move(name), passed, measured, tolerance});
    };

    const SymEig eig_x = sym_eig(-1.0 * sx.matrix());
    const SymEig eig_y = sym_eig(-1.0 * sy.matrix());
    add("min eig(-A_alpha) > 0", eig_x.eigenvalues.front(), 0.0, eig_x.eigenvalues.front() > 0.0);
    add("min eig(-A_beta) > 0", eig_y.eigenvalues.front(), 0.0, eig_y.eigenvalues.front() > 0.0);

    const KroneckerOps ops = assemble_kronecker(sx, sy);
    {
        const double scale = ops.a_x.norm_inf() * ops.a_y.norm_inf();
        const double d = max_abs_difference(ops.a_x * ops.a_y, ops.a_y * ops.a_x) / scale;
        add("A_x A_y = A_y A_x", d, 1e-13, d <= 1e-13);
    }

    const DenseMatrix& lam_a = *riesz_sqrt(alpha, h_x, n_x);
    const DenseMatrix& lam_b = *riesz_sqrt(beta, h_y, n_y);
    const DenseMatrix lx = kronecker(DenseMatrix::identity(n_y), lam_a);
    const DenseMatrix ly = kronecker(lam_b, DenseMatrix::identity(n_x));
    {
        const double scale = lx.norm_inf() * ly.norm_inf();
        const double d = max_abs_difference(lx * ly, ly * lx) / scale;
        add("Lambda_x Lambda_y = Lambda_y Lambda_x", d, 1e-12, d <= 1e-12);
    }
    {
        const double scale = lx.norm_inf() * ops.a_y.norm_inf();
        const double d = max_abs_difference(lx * ops.a_y, ops.a_y * lx) / scale;
        add("Lambda_x A_y = A_y Lambda_x", d, 1e-12, d <= 1e-12);
    }
    for (const auto* s : {&sx, &sy}) {
        const DenseMatrix& lam = s == &sx ? lam_a : lam_b;
        const DenseMatrix neg_op = (-s->scale()) * s->matrix();
        const double d = max_abs_difference(lam * lam, neg_op) / neg_op.norm_inf();
        add(s == &sx ? "Lambda_alpha^2 = -grad_alpha" : "Lambda_beta^2 = -grad_beta", d, 1e-10,
            d <= 1e-10);
    }
    {
        // Spectrum of I ⊗ A_α: each eigenvalue of A_α repeated n_y times.
        const SymEig kron_eig = sym_eig(ops.a_x);
        std::vector<double> expected;
        for (double v : eig_x.eigenvalues)
            for (std::size_t r = 0; r < n_y; ++r) expected.push_back(-v);
        std::sort(expected.begin(), expected.end());
        double d = 0.0;
        for (std::size_t p = 0; p < expected.size(); ++p)
            d = std::max(d, std::abs(kron_eig.eigenvalues[p] - expected[p]));
        add("spectrum(I kron A_alpha) = spectrum(A_alpha) repeated", d, 1e-9, d <= 1e-9);
    }
    {
        std::mt19937_64 rng(20240607);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto* s : {&sx, &sy}) {
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<double> u(s->size());
                for (double& v : u) v = dist(rng);
                const std::vector<double> gu = apply_riesz(*s, u);
                const double q = -inner_1d(gu, u, s->h()) / inner_1d(u, u, s->h());
                worst = std::min(worst, q);
            }
        }
        add("-(grad u, u) > 0 on 100 random u", worst, 0.0, worst > 0.0);
    }
    return report;
}

}  // namespace rieszwave
