#include "cli/cli.hpp"

#include "rieszwave/diagnostics.hpp"
#include "rieszwave/errors.hpp"
#include "rieszwave/parallel.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <ostream>

namespace rieszwave::cli {
namespace {

// Flat key = value files: unqualified keys belong to the selected subcommand.
class FlatConfig : public CLI::ConfigINI {
public:
    explicit FlatConfig(const CLI::App* app) : app_(app) {}

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        auto items = CLI::ConfigINI::from_config(input);
        const auto selected = app_->get_subcommands();
        if (!selected.empty())
            for (auto& item : items)
                if (item.parents.empty()) item.parents = {selected.front()->get_name()};
        return items;
    }

private:
    const CLI::App* app_;
};

void add_theta(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--theta", c.theta, "Weight of the three-level average")->capture_default_str();
    cmd->add_flag("--allow-unstable-theta", c.allow_unstable_theta,
                  "Accept theta in [0, 1/4) where stability is not established");
}

void add_orders(CLI::App* cmd, RunConfig& c, bool two_d) {
    cmd->add_option("--alpha", c.alpha, "Fractional order in x, (1, 2]")->capture_default_str();
    if (two_d) cmd->add_option("--beta", c.beta, "Fractional order in y, (1, 2]")->capture_default_str();
}

void add_start(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--start", c.start, "Second level: taylor or exact")
        ->check(CLI::IsMember({"taylor", "exact"}))
        ->capture_default_str();
}

void add_method(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--method", c.method, "2D stepper: adi, perturbed-direct, unsplit-direct")
        ->check(CLI::IsMember({"adi", "perturbed-direct", "unsplit-direct"}))
        ->capture_default_str();
}

void add_custom(CLI::App* cmd, RunConfig& c, bool two_d) {
    cmd->add_option(two_d ? "--length-x,--length" : "--length", c.length, "Domain length (custom)")
        ->capture_default_str();
    if (two_d) cmd->add_option("--length-y", c.length_y, "Domain length in y (custom)")->capture_default_str();
    cmd->add_option(two_d ? "--coefficient-x,--coefficient" : "--coefficient", c.coefficient,
                    "Coefficient form (custom), e.g. const:1, power:1,2")
        ->capture_default_str();
    if (two_d)
        cmd->add_option("--coefficient-y", c.coefficient_y, "Coefficient form in y (custom)")
            ->capture_default_str();
    cmd->add_option("--displacement", c.displacement, "Initial displacement: zero, quartic, sine")
        ->capture_default_str();
    cmd->add_option("--velocity", c.velocity, "Initial velocity: zero, quartic, sine")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    unsigned workers = 0;

    CLI::App app{"Solvers for space-Riesz fractional wave equations", "rieszwave"};
    app.fallthrough();
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
    app.config_formatter(std::make_shared<FlatConfig>(&app));
    app.add_option("--workers", workers, "Worker thread cap (0 = hardware concurrency)");

    auto* solve1d = app.add_subcommand("solve1d", "Solve a 1D problem and write the final field");
    solve1d->add_option("--problem", c.problem, "Built-in problem name or custom")->required();
    add_orders(solve1d, c, false);
    add_theta(solve1d, c);
    solve1d->add_option("--n", c.n, "Number of spatial subintervals")->required();
    solve1d->add_option("--tau", c.tau, "Time step")->required();
    solve1d->add_option("--final-time", c.final_time, "Override the final time");
    add_start(solve1d, c);
    add_custom(solve1d, c, false);
    solve1d->add_option("--output,-o", c.output, "CSV path (default: standard output)");
    solve1d->add_option("--snapshot-times", c.snapshot_times, "Times at which to save the field")
        ->delimiter(',');
    solve1d->add_option("--snapshot-prefix", c.snapshot_prefix, "Snapshot files are <prefix>_k<step>.csv");

    auto* solve2d = app.add_subcommand("solve2d", "Solve a 2D problem and write the final field");
    solve2d->add_option("--problem", c.problem, "Built-in problem name or custom")->required();
    add_orders(solve2d, c, true);
    add_theta(solve2d, c);
    solve2d->add_option("--n", c.n, "Subintervals in both directions");
    solve2d->add_option("--nx", c.nx, "Subintervals in x (overrides --n)");
    solve2d->add_option("--ny", c.ny, "Subintervals in y (overrides --n)");
    solve2d->add_option("--tau", c.tau, "Time step")->required();
    solve2d->add_option("--final-time", c.final_time, "Override the final time");
    add_method(solve2d, c);
    add_start(solve2d, c);
    add_custom(solve2d, c, true);
    solve2d->add_option("--output,-o", c.output, "CSV path (default: standard output)");

    auto* converge = app.add_subcommand("converge", "Refinement study with tau = ratio * h");
    converge->add_option("--problem", c.problem, "Built-in problem with an exact solution")->required();
    add_orders(converge, c, true);
    add_theta(converge, c);
    converge->add_option("--base-n", c.base_n, "Subintervals on the coarsest level")->required();
    converge->add_option("--levels", c.levels, "Number of levels, each halving h")->capture_default_str();
    converge->add_option("--tau-ratio", c.tau_ratio, "tau / h on every level")->capture_default_str();
    converge->add_option("--eval-time", c.final_time, "Measure the error at this time");
    add_method(converge, c);
    add_start(converge, c);
    converge->add_flag("--error-energy", c.error_energy, "Also report the error energy (1D)");
    converge->add_flag("--serial-levels", c.serial_levels, "Run levels one after another");
    converge->add_option("--csv", c.csv_path, "CSV table path (default: standard output)");
    converge->add_option("--text", c.text_path, "Aligned text table path (default: standard output)");

    auto* energy = app.add_subcommand("energy", "Energy functional and balance residual per step");
    energy->add_option("--problem", c.problem, "Built-in problem name, custom or custom-2d")->required();
    add_orders(energy, c, true);
    add_theta(energy, c);
    energy->add_option("--n", c.n, "Subintervals (both directions in 2D)");
    energy->add_option("--nx", c.nx, "Subintervals in x (2D)");
    energy->add_option("--ny", c.ny, "Subintervals in y (2D)");
    energy->add_option("--tau", c.tau, "Time step")->required();
    energy->add_option("--final-time", c.final_time, "Override the final time");
    add_method(energy, c);
    add_start(energy, c);
    add_custom(energy, c, true);
    energy->add_option("--output,-o", c.output, "CSV path (default: standard output)");
    energy->add_option("--check-tolerance", c.check_tolerance,
                       "Exit 1 when max |residual| exceeds this multiple of max E (constant coefficients)");

    auto* selftest = app.add_subcommand("selftest", "Run structure and oracle checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    const ScopedDiagnosticSink sink(
        [&err](std::string_view message) { err << "rieszwave: warning: " << message << '\n'; });
    try {
        set_max_workers(workers);
        if (solve1d->parsed()) return cmd_solve1d(c, out);
        if (solve2d->parsed()) return cmd_solve2d(c, out);
        if (converge->parsed()) return cmd_converge(c, out);
        if (energy->parsed()) return cmd_energy(c, out);
        if (selftest->parsed()) return cmd_selftest(out);
    } catch (const InvalidInput& e) {
        err << "rieszwave: configuration error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "rieszwave: numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
    return kExitConfigError;
}

}  // namespace rieszwave::cli
