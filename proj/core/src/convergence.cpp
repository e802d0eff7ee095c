#include "rieszwave/convergence.hpp"

#include "rieszwave/energy.hpp"
#include "rieszwave/errors.hpp"
#include "rieszwave/format.hpp"
#include "rieszwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace rieszwave {
namespace {

std::string tau_label(double tau) {
    const double inv = 1.0 / tau;
    const double rounded = std::round(inv);
    if (rounded >= 1.0 && std::abs(inv - rounded) < 1e-9 * inv)
        return "1/" + std::to_string(static_cast<long long>(rounded));
    return format_short(tau, 6);
}

void fill_rates(ConvergenceTable& table) {
    std::vector<double> errors;
    std::vector<double> hs;
    for (const auto& row : table.rows) {
        errors.push_back(row.max_error);
        hs.push_back(row.h);
    }
    const auto rates = observed_order(errors, hs);
    for (std::size_t r = 1; r < table.rows.size(); ++r) table.rows[r].rate = rates[r - 1];

    if (!table.rows.front().error_energy) return;
    std::vector<double> energies;
    for (const auto& row : table.rows) energies.push_back(*row.error_energy);
    const auto energy_rates = observed_order(energies, hs);
    for (std::size_t r = 1; r < table.rows.size(); ++r) table.rows[r].energy_rate = energy_rates[r - 1];
}

void run_levels(std::size_t count, bool concurrent, const std::function<void(std::size_t)>& body) {
    if (concurrent) {
        parallel_for(count, body);
    } else {
        for (std::size_t r = 0; r < count; ++r) body(r);
    }
}

}  // namespace

RefinementLadder::RefinementLadder(std::vector<std::size_t> intervals, double tau_ratio)
    : intervals_(std::move(intervals)), tau_ratio_(tau_ratio) {
    if (intervals_.size() < 2) throw InvalidInput("a refinement ladder needs at least two levels");
    if (!(tau_ratio > 0.0)) throw InvalidInput("tau ratio must be positive");
    for (std::size_t r = 0; r < intervals_.size(); ++r) {
        if (intervals_[r] < 2) throw InvalidInput("each level needs at least 2 intervals");
        if (r > 0 && intervals_[r] <= intervals_[r - 1])
            throw InvalidInput("ladder interval counts must increase");
    }
}

RefinementLadder RefinementLadder::halving(std::size_t base_intervals, std::size_t levels,
                                           double tau_ratio) {
    std::vector<std::size_t> intervals;
    std::size_t n = base_intervals;
    for (std::size_t r = 0; r < levels; ++r, n *= 2) intervals.push_back(n);
    return RefinementLadder(std::move(intervals), tau_ratio);
}

double RefinementLadder::tau(std::size_t r, double length) const {
    return tau_ratio_ * length / static_cast<double>(intervals_.at(r));
}

double max_error(std::span<const double> numeric, std::span<const double> exact) {
    if (numeric.size() != exact.size()) throw InvalidInput("max_error: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < numeric.size(); ++i) m = std::max(m, std::abs(numeric[i] - exact[i]));
    return m;
}

double max_error(const Field2D& numeric, const Field2D& exact) {
    if (!numeric.same_shape(exact)) throw InvalidInput("max_error: shape mismatch");
    return max_error(numeric.values(), exact.values());
}

std::vector<double> observed_order(std::span<const double> errors) {
    std::vector<double> h(errors.size());
    for (std::size_t r = 0; r < h.size(); ++r) h[r] = std::ldexp(1.0, -static_cast<int>(r));
    return observed_order(errors, h);
}

std::vector<double> observed_order(std::span<const double> errors, std::span<const double> h) {
    if (errors.size() < 2) throw InvalidInput("observed_order needs at least two errors");
    if (h.size() != errors.size()) throw InvalidInput("observed_order: step list length mismatch");
    for (double e : errors)
        if (!(e > 0.0)) throw InvalidInput("observed_order: errors must be positive");
    std::vector<double> rates;
    for (std::size_t r = 1; r < errors.size(); ++r) {
        const double ratio = h[r - 1] / h[r];
        // Exact halving keeps the plain log2 convention.
        rates.push_back(ratio == 2.0 ? std::log2(errors[r - 1] / errors[r])
                                     : std::log(errors[r - 1] / errors[r]) / std::log(ratio));
    }
    return rates;
}

ConvergenceTable run_study_1d(const WaveProblem1D& problem, const RefinementLadder& ladder,
                              Theta theta, const StudyOptions& options) {
    if (!problem.exact) throw InvalidInput("convergence study needs a problem with an exact solution");
    const auto& exact = *problem.exact;
    const double t_eval = options.evaluation_time.value_or(problem.final_time);

    ConvergenceTable table;
    table.problem_id = problem.id;
    table.alpha = problem.alpha.value();
    table.theta = theta.value();
    table.method = "weighted";
    table.start = options.start == StartMode::exact ? "exact" : "taylor";
    table.evaluation_time = t_eval;
    table.rows.resize(ladder.levels());

    run_levels(ladder.levels(), options.concurrent_levels, [&](std::size_t r) {
        const Grid1D grid(problem.length, ladder.intervals()[r]);
        const double tau = ladder.tau(r, problem.length);
        SolveOptions1D solve_options;
        solve_options.start = options.start;
        solve_options.final_time = t_eval;
        std::vector<double> before_last;
        std::vector<double> last;
        const std::size_t n_steps = step_count(t_eval, tau);
        if (options.error_energy) {
            solve_options.observer = [&](std::size_t k, std::span<const double> u) {
                if (k + 1 == n_steps) before_last.assign(u.begin(), u.end());
                if (k == n_steps) last.assign(u.begin(), u.end());
            };
        }
        const SolveResult1D result = solve(problem, grid, tau, theta, solve_options);
        const std::vector<double> u_exact = grid.sample([&](double x) { return exact(x, t_eval); });

        ConvergenceRow& row = table.rows[r];
        row.intervals = grid.intervals();
        row.h = grid.h();
        row.tau = tau;
        row.max_error = max_error(result.final_field, u_exact);
        if (options.error_energy) {
            const double t_prev = t_eval - tau;
            const std::vector<double> u_exact_prev =
                grid.sample([&](double x) { return exact(x, t_prev); });
            const EnergyOps1D ops = make_energy_ops(problem, grid, tau, theta);
            row.error_energy = error_energy_1d(ops, before_last, last, u_exact_prev, u_exact);
        }
    });
    fill_rates(table);
    return table;
}

ConvergenceTable run_study_2d(const WaveProblem2D& problem, const RefinementLadder& ladder,
                              Theta theta, const StudyOptions& options) {
    if (!problem.exact) throw InvalidInput("convergence study needs a problem with an exact solution");
    const auto& exact = *problem.exact;
    const double t_eval = options.evaluation_time.value_or(problem.final_time);
    if (problem.length_x != problem.length_y)
        throw InvalidInput("2D studies couple τ to h and need a square domain");

    ConvergenceTable table;
    table.problem_id = problem.id;
    table.alpha = problem.alpha.value();
    table.beta = problem.beta.value();
    table.theta = theta.value();
    table.method = std::string(method_name(options.method));
    table.start = options.start == StartMode::exact ? "exact" : "taylor";
    table.evaluation_time = t_eval;
    table.rows.resize(ladder.levels());

    run_levels(ladder.levels(), options.concurrent_levels, [&](std::size_t r) {
        const std::size_t n = ladder.intervals()[r];
        const Grid2D grid(problem.length_x, n, problem.length_y, n);
        const double tau = ladder.tau(r, problem.length_x);
        SolveOptions2D solve_options;
        solve_options.method = options.method;
        solve_options.start = options.start;
        solve_options.final_time = t_eval;
        const SolveResult2D result = solve_2d(problem, grid, tau, theta, solve_options);
        const Field2D u_exact(grid.nx(), grid.ny(),
                              grid.sample([&](double x, double y) { return exact(x, y, t_eval); }));

        ConvergenceRow& row = table.rows[r];
        row.intervals = n;
        row.h = grid.x().h();
        row.tau = tau;
        row.max_error = max_error(result.final_field, u_exact);
    });
    fill_rates(table);
    return table;
}

void write_table_csv(std::ostream& out, const ConvergenceTable& table) {
    const bool energy = !table.rows.empty() && table.rows.front().error_energy.has_value();
    out << "intervals,h,tau,max_error,rate";
    if (energy) out << ",error_energy,energy_rate";
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.intervals << ',' << format_real(row.h) << ',' << format_real(row.tau) << ','
            << format_real(row.max_error) << ',';
        if (row.rate) out << format_real(*row.rate);
        if (energy) {
            out << ',' << format_real(*row.error_energy) << ',';
            if (row.energy_rate) out << format_real(*row.energy_rate);
        }
        out << '\n';
    }
}

void write_table_text(std::ostream& out, const ConvergenceTable& table) {
    std::ostringstream header;
    header << "problem " << table.problem_id << ", alpha = " << table.alpha;
    if (table.beta) header << ", beta = " << *table.beta;
    header << ", theta = " << table.theta << ", method " << table.method << ", start "
           << table.start << ", t = " << table.evaluation_time;
    out << header.str() << '\n';

    const bool energy = !table.rows.empty() && table.rows.front().error_energy.has_value();
    out << std::left << std::setw(10) << "tau" << std::setw(14) << "max error" << std::setw(8)
        << "rate";
    if (energy) out << std::setw(14) << "error energy" << std::setw(8) << "rate";
    out << '\n';
    for (const auto& row : table.rows) {
        out << std::setw(10) << tau_label(row.tau) << std::setw(14) << format_short(row.max_error)
            << std::setw(8);
        if (row.rate) {
            std::ostringstream rate;
            rate << std::fixed << std::setprecision(4) << *row.rate;
            out << rate.str();
        } else {
            out << "";
        }
        if (energy) {
            out << std::setw(14) << format_short(*row.error_energy) << std::setw(8);
            if (row.energy_rate) {
                std::ostringstream rate;
                rate << std::fixed << std::setprecision(4) << *row.energy_rate;
                out << rate.str();
            } else {
                out << "";
            }
        }
        out << '\n';
    }
}

}  // namespace rieszwave
