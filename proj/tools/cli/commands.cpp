#include "cli/cli.hpp"

#include "rieszwave/convergence.hpp"
#include "rieszwave/energy.hpp"
#include "rieszwave/errors.hpp"
#include "rieszwave/format.hpp"
#include "rieszwave/problems.hpp"
#include "rieszwave/solver1d.hpp"
#include "rieszwave/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace rieszwave::cli {
namespace {

bool is_1d_problem(const std::string& name) {
    const auto names = builtin_problem_names_1d();
    return name == "custom" || std::find(names.begin(), names.end(), name) != names.end();
}

bool is_2d_problem(const std::string& name) {
    const auto names = builtin_problem_names_2d();
    return name == "custom-2d" || std::find(names.begin(), names.end(), name) != names.end();
}

WaveProblem1D build_problem_1d(const RunConfig& c) {
    if (c.problem == "custom") {
        CustomSpec1D spec;
        spec.alpha = FractionalOrder(c.alpha);
        spec.length = c.length;
        if (c.final_time) spec.final_time = *c.final_time;
        spec.coefficient = c.coefficient;
        spec.displacement = c.displacement;
        spec.velocity = c.velocity;
        return custom_problem_1d(spec);
    }
    return make_problem_1d(c.problem, FractionalOrder(c.alpha));
}

WaveProblem2D build_problem_2d(const RunConfig& c) {
    if (c.problem == "custom" || c.problem == "custom-2d") {
        CustomSpec2D spec;
        spec.alpha = FractionalOrder(c.alpha);
        spec.beta = FractionalOrder(c.beta);
        spec.length_x = c.length;
        spec.length_y = c.length_y;
        if (c.final_time) spec.final_time = *c.final_time;
        spec.coefficient_x = c.coefficient;
        spec.coefficient_y = c.coefficient_y;
        spec.displacement = c.displacement;
        spec.velocity = c.velocity;
        return custom_problem_2d(spec);
    }
    return make_problem_2d(c.problem, FractionalOrder(c.alpha), FractionalOrder(c.beta));
}

StartMode parse_start(const std::string& s) {
    if (s == "taylor") return StartMode::taylor;
    if (s == "exact") return StartMode::exact;
    throw InvalidInput("unknown start mode '" + s + "'");
}

std::pair<std::size_t, std::size_t> grid_counts(const RunConfig& c) {
    const std::size_t nx = c.nx ? c.nx : c.n;
    const std::size_t ny = c.ny ? c.ny : c.n;
    if (nx == 0 || ny == 0) throw InvalidInput("set --n or both --nx and --ny");
    return {nx, ny};
}

void require_finite(std::span<const double> values) {
    for (double v : values)
        if (!std::isfinite(v)) throw NumericalFailure("solution contains non-finite values");
}

// Writes to `path`, or to `fallback` when the path is empty.
template <class Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InvalidInput("cannot open '" + path + "' for writing");
    write(file);
    if (!file) throw InvalidInput("failed writing '" + path + "'");
}

void write_field_1d(std::ostream& os, const Grid1D& grid, std::span<const double> u,
                    const WaveProblem1D& problem, double t) {
    const bool exact = problem.exact.has_value();
    os << "x,u_numeric" << (exact ? ",u_exact,error" : "") << '\n';
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = grid.node(i + 1);
        os << format_real(x) << ',' << format_real(u[i]);
        if (exact) {
            const double ue = (*problem.exact)(x, t);
            os << ',' << format_real(ue) << ',' << format_real(std::abs(u[i] - ue));
        }
        os << '\n';
    }
}

}  // namespace

int cmd_solve1d(const RunConfig& c, std::ostream& out) {
    const WaveProblem1D problem = build_problem_1d(c);
    const Theta theta(c.theta, c.allow_unstable_theta);
    const Grid1D grid(problem.length, c.n);
    if (!c.snapshot_times.empty() && c.snapshot_prefix.empty())
        throw InvalidInput("--snapshot-times needs --snapshot-prefix");

    SolveOptions1D options;
    options.start = parse_start(c.start);
    options.final_time = c.final_time;
    options.snapshot_times = c.snapshot_times;
    const SolveResult1D result = solve(problem, grid, c.tau, theta, options);
    require_finite(result.final_field);

    with_output(c.output, out, [&](std::ostream& os) {
        write_field_1d(os, grid, result.final_field, problem, result.final_time);
    });
    for (const Snapshot1D& snap : result.snapshots) {
        const auto k = static_cast<long long>(std::llround(snap.time / c.tau));
        with_output(c.snapshot_prefix + "_k" + std::to_string(k) + ".csv", out, [&](std::ostream& os) {
            write_field_1d(os, grid, snap.values, problem, snap.time);
        });
    }

    out << "# problem=" << problem.id << " alpha=" << problem.alpha.value() << " theta=" << theta.value()
        << " n=" << grid.intervals() << " tau=" << format_real(c.tau) << " steps=" << result.steps
        << " t=" << format_real(result.final_time) << '\n';
    if (problem.exact) {
        const auto u_exact = grid.sample([&](double x) { return (*problem.exact)(x, result.final_time); });
        out << "# max_error=" << format_real(max_error(result.final_field, u_exact)) << '\n';
    }
    return kExitOk;
}

int cmd_solve2d(const RunConfig& c, std::ostream& out) {
    const WaveProblem2D problem = build_problem_2d(c);
    const Theta theta(c.theta, c.allow_unstable_theta);
    const auto [nx, ny] = grid_counts(c);
    const Grid2D grid(problem.length_x, nx, problem.length_y, ny);

    SolveOptions2D options;
    options.method = parse_method_2d(c.method);
    options.start = parse_start(c.start);
    options.final_time = c.final_time;
    const SolveResult2D result = solve_2d(problem, grid, c.tau, theta, options);
    require_finite(result.final_field.values());

    const bool exact = problem.exact.has_value();
    double worst = 0.0;
    with_output(c.output, out, [&](std::ostream& os) {
        os << "x,y,u_numeric" << (exact ? ",u_exact,error" : "") << '\n';
        for (std::size_t j = 0; j < grid.ny(); ++j) {
            const double y = grid.y().node(j + 1);
            for (std::size_t i = 0; i < grid.nx(); ++i) {
                const double x = grid.x().node(i + 1);
                const double u = result.final_field(i, j);
                os << format_real(x) << ',' << format_real(y) << ',' << format_real(u);
                if (exact) {
                    const double ue = (*problem.exact)(x, y, result.final_time);
                    worst = std::max(worst, std::abs(u - ue));
                    os << ',' << format_real(ue) << ',' << format_real(std::abs(u - ue));
                }
                os << '\n';
            }
        }
    });

    out << "# problem=" << problem.id << " alpha=" << problem.alpha.value()
        << " beta=" << problem.beta.value() << " theta=" << theta.value() << " nx=" << nx
        << " ny=" << ny << " tau=" << format_real(c.tau) << " method=" << method_name(options.method)
        << " steps=" << result.steps << " t=" << format_real(result.final_time) << '\n';
    if (exact) out << "# max_error=" << format_real(worst) << '\n';
    return kExitOk;
}

int cmd_converge(const RunConfig& c, std::ostream& out) {
    const Theta theta(c.theta, c.allow_unstable_theta);
    const RefinementLadder ladder = RefinementLadder::halving(c.base_n, c.levels, c.tau_ratio);
    StudyOptions options;
    options.start = parse_start(c.start);
    options.method = parse_method_2d(c.method);
    options.evaluation_time = c.final_time;
    options.error_energy = c.error_energy;
    options.concurrent_levels = !c.serial_levels;

    ConvergenceTable table;
    if (is_1d_problem(c.problem) && c.problem != "custom") {
        table = run_study_1d(make_problem_1d(c.problem, FractionalOrder(c.alpha)), ladder, theta, options);
    } else if (is_2d_problem(c.problem) && c.problem != "custom-2d") {
        if (c.error_energy) throw InvalidInput("--error-energy is available for 1D problems only");
        table = run_study_2d(make_problem_2d(c.problem, FractionalOrder(c.alpha), FractionalOrder(c.beta)),
                             ladder, theta, options);
    } else {
        throw InvalidInput("converge needs a built-in problem with an exact solution, got '" +
                           c.problem + "'");
    }
    for (const auto& row : table.rows)
        if (!std::isfinite(row.max_error)) throw NumericalFailure("non-finite error in study");

    with_output(c.text_path, out, [&](std::ostream& os) { write_table_text(os, table); });
    if (c.csv_path.empty()) out << '\n';
    with_output(c.csv_path, out, [&](std::ostream& os) { write_table_csv(os, table); });
    return kExitOk;
}

int cmd_energy(const RunConfig& c, std::ostream& out) {
    const Theta theta(c.theta, c.allow_unstable_theta);
    const StartMode start = parse_start(c.start);
    EnergyReport report;
    if (is_1d_problem(c.problem)) {
        const WaveProblem1D problem = build_problem_1d(c);
        if (c.n == 0) throw InvalidInput("energy for a 1D problem needs --n");
        const Grid1D grid(problem.length, c.n);
        SolveOptions1D options;
        options.start = start;
        options.final_time = c.final_time;
        options.keep_trajectory = true;
        const SolveResult1D result = solve(problem, grid, c.tau, theta, options);
        require_finite(result.final_field);
        report = monitor_1d(result.trajectory, problem, grid, make_energy_ops(problem, grid, c.tau, theta));
    } else if (is_2d_problem(c.problem)) {
        const WaveProblem2D problem = build_problem_2d(c);
        const auto [nx, ny] = grid_counts(c);
        const Grid2D grid(problem.length_x, nx, problem.length_y, ny);
        SolveOptions2D options;
        options.method = parse_method_2d(c.method);
        options.start = start;
        options.final_time = c.final_time;
        options.keep_trajectory = true;
        const SolveResult2D result = solve_2d(problem, grid, c.tau, theta, options);
        require_finite(result.final_field.values());
        report = monitor_2d(result.trajectory, problem, grid, make_energy_ops(problem, grid, c.tau, theta));
    } else {
        throw InvalidInput("unknown problem '" + c.problem + "'");
    }

    with_output(c.output, out, [&](std::ostream& os) { write_energy_csv(os, report); });
    const double relative = report.max_energy > 0.0 ? report.max_abs_residual / report.max_energy : 0.0;
    out << "# max_energy=" << format_real(report.max_energy) << '\n'
        << "# max_balance_residual=" << format_real(report.max_abs_residual) << '\n'
        << "# relative_balance_residual=" << format_real(relative) << '\n'
        << "# max_relative_drift=" << format_real(report.max_relative_drift) << '\n'
        << "# gronwall=" << (report.gronwall_holds ? "holds" : "violated") << '\n'
        << "# balance=" << (report.constant_coefficients ? "exact" : "informational") << '\n';
    if (!report.theta_supported) out << "# theta below 1/4: energy terms may be negative\n";

    if (c.check_tolerance && report.constant_coefficients &&
        (relative > *c.check_tolerance || !report.gronwall_holds)) {
        out << "# check failed: tolerance " << format_real(*c.check_tolerance) << '\n';
        return kExitTestFailure;
    }
    return kExitOk;
}

}  // namespace rieszwave::cli
