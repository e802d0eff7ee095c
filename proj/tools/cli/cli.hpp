#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rieszwave::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTestFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;

/// Everything a subcommand may read. Fields irrelevant to a subcommand are
/// ignored by it.
struct RunConfig {
    std::string problem;
    double alpha = 1.5;
    double beta = 1.5;
    double theta = 0.5;
    bool allow_unstable_theta = false;
    std::size_t n = 0;
    std::size_t nx = 0;
    std::size_t ny = 0;
    double tau = 0.0;
    std::optional<double> final_time;
    std::string method = "adi";
    std::string start = "taylor";
    std::string output;

    // Custom problems.
    double length = 1.0;
    double length_y = 1.0;
    std::string coefficient = "const:1";
    std::string coefficient_y = "const:1";
    std::string displacement = "quartic";
    std::string velocity = "zero";

    std::vector<double> snapshot_times;
    std::string snapshot_prefix;

    // Convergence studies.
    std::size_t levels = 4;
    std::size_t base_n = 0;
    double tau_ratio = 1.0;
    std::string csv_path;
    std::string text_path;
    bool error_energy = false;
    bool serial_levels = false;

    // Energy diagnostics.
    std::optional<double> check_tolerance;
};

/// Parses `args` (without the program name), dispatches, and maps errors to
/// exit codes: 0 ok, 1 test failure, 2 config error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_solve1d(const RunConfig& config, std::ostream& out);
int cmd_solve2d(const RunConfig& config, std::ostream& out);
int cmd_converge(const RunConfig& config, std::ostream& out);
int cmd_energy(const RunConfig& config, std::ostream& out);
int cmd_selftest(std::ostream& out);

}  // namespace rieszwave::cli
