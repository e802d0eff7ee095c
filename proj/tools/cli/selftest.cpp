#include "cli/cli.hpp"

#include "rieszwave/convergence.hpp"
#include "rieszwave/energy.hpp"
#include "rieszwave/format.hpp"
#include "rieszwave/fracops.hpp"
#include "rieszwave/problems.hpp"
#include "rieszwave/solver1d.hpp"
#include "rieszwave/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace rieszwave::cli {
namespace {

struct Outcome {
    bool passed;
    double measured;
    double limit;
};

class Runner {
public:
    explicit Runner(std::ostream& out) : out_(out) {}

    void run(const std::string& name, const std::function<Outcome()>& check) {
        Outcome o{false, 0.0, 0.0};
        std::string note;
        try {
            o = check();
        } catch (const std::exception& e) {
            note = std::string(" error: ") + e.what();
        }
        if (!o.passed) ++failures_;
        out_ << (o.passed ? "PASS " : "FAIL ") << name << " (measured " << format_short(o.measured)
             << ", limit " << format_short(o.limit) << ")" << note << '\n';
    }

    int failures() const noexcept { return failures_; }

private:
    std::ostream& out_;
    int failures_ = 0;
};

Outcome at_most(double measured, double limit) { return {measured <= limit, measured, limit}; }

double energy_drift_1d(double theta) {
    const WaveProblem1D problem = constcoef_free_1d(FractionalOrder(1.5));
    const Grid1D grid(1.0, 32);
    const double tau = 1.0 / 128.0;
    SolveOptions1D options;
    options.keep_trajectory = true;
    const auto result = solve(problem, grid, tau, Theta(theta), options);
    const auto report = monitor_1d(result.trajectory, problem, grid,
                                   make_energy_ops(problem, grid, tau, Theta(theta)));
    return report.max_relative_drift;
}

double energy_drift_2d(double theta) {
    const WaveProblem2D problem = constcoef_free_2d(FractionalOrder(1.4), FractionalOrder(1.7));
    const Grid2D grid(1.0, 9, 1.0, 9);
    const double tau = 1.0 / 200.0;
    SolveOptions2D options;
    options.keep_trajectory = true;
    const auto result = solve_2d(problem, grid, tau, Theta(theta), options);
    const auto report = monitor_2d(result.trajectory, problem, grid,
                                   make_energy_ops(problem, grid, tau, Theta(theta)));
    return report.max_relative_drift;
}

}  // namespace

int cmd_selftest(std::ostream& out) {
    Runner runner(out);

    runner.run("weights g_2(1.5) = 0.375", [] {
        return at_most(std::abs(grunwald_g(FractionalOrder(1.5), 2)[2] - 0.375), 1e-15);
    });
    runner.run("weights phi_1(1.5) = -0.875", [] {
        return at_most(std::abs(phi_weights(FractionalOrder(1.5), 2)[1] + 0.875), 1e-15);
    });
    runner.run("alpha = 2 operator is the central second difference", [] {
        const double h = 0.1;
        const RieszStencil s(FractionalOrder(2.0), h, 9);
        double worst = 0.0;
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t l = 0; l < 9; ++l) {
                const double expected = i == l ? -2.0 : (i + 1 == l || l + 1 == i ? 1.0 : 0.0);
                worst = std::max(worst, std::abs(s.scale() * s.matrix()(i, l) * h * h - expected));
            }
        return at_most(worst, 1e-12);
    });

    const std::pair<double, double> orders[] = {{1.2, 1.8}, {1.5, 1.5}, {1.8, 1.2}};
    for (const auto& [a, b] : orders) {
        for (std::size_t n : {8u, 16u}) {
            const StructureReport report = structure_checks(FractionalOrder(a), FractionalOrder(b), n, n);
            for (const StructureCheck& check : report.checks) {
                std::ostringstream name;
                name << "structure alpha=" << a << " beta=" << b << " n=" << n << ": " << check.name;
                runner.run(name.str(), [&] {
                    return Outcome{check.passed, check.measured, check.tolerance};
                });
            }
        }
    }

    runner.run("adi equals perturbed-direct on 8x8 (relative)", [] {
        const WaveProblem2D problem = example_4_2(FractionalOrder(1.3), FractionalOrder(1.7));
        const Grid2D grid(1.0, 9, 1.0, 9);
        const double tau = 1.0 / 40.0;
        SolveOptions2D options;
        options.keep_trajectory = true;
        const auto adi = solve_2d(problem, grid, tau, Theta(0.75), options);
        options.method = Method2D::perturbed_direct;
        const auto direct = solve_2d(problem, grid, tau, Theta(0.75), options);
        double worst = 0.0;
        for (std::size_t k = 0; k < adi.trajectory.size(); ++k) {
            const double scale = std::max(1e-300, max_error(direct.trajectory[k],
                                                            Field2D(grid.nx(), grid.ny())));
            worst = std::max(worst, max_error(adi.trajectory[k], direct.trajectory[k]) / scale);
        }
        return at_most(worst, 1e-10);
    });

    runner.run("example41 alpha=1.6 theta=0.5 rate between n=40 and n=80", [] {
        const auto table = run_study_1d(example_4_1(FractionalOrder(1.6)), RefinementLadder::halving(40, 2),
                                        Theta(0.5));
        const double rate = *table.rows[1].rate;
        return Outcome{rate >= 1.85 && rate <= 2.15, rate, 2.15};
    });

    for (double theta : {0.25, 0.5, 1.0}) {
        std::ostringstream name;
        name << "1D zero-source energy conservation theta=" << theta;
        runner.run(name.str(), [theta] { return at_most(energy_drift_1d(theta), 1e-10); });
    }
    for (double theta : {0.25, 0.5, 1.0}) {
        std::ostringstream name;
        name << "2D zero-source energy conservation theta=" << theta;
        runner.run(name.str(), [theta] { return at_most(energy_drift_2d(theta), 1e-9); });
    }

    out << (runner.failures() == 0 ? "selftest: all checks passed\n"
                                   : "selftest: " + std::to_string(runner.failures()) + " check(s) failed\n");
    return runner.failures() == 0 ? kExitOk : kExitTestFailure;
}

}  // namespace rieszwave::cli
