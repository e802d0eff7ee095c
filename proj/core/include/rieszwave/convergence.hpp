#pragma once

#include "rieszwave/problems.hpp"
#include "rieszwave/solver1d.hpp"
#include "rieszwave/solver2d.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rieszwave {

/// Spatial resolutions of a study with τ = tau_ratio · h on each level.
/// In 2D every level uses the same interval count in both directions.
class RefinementLadder {
public:
    /// Explicit interval counts, at least two, strictly increasing.
    explicit RefinementLadder(std::vector<std::size_t> intervals, double tau_ratio = 1.0);
    /// base, 2 base, 4 base, ... (`levels` entries).
    static RefinementLadder halving(std::size_t base_intervals, std::size_t levels,
                                    double tau_ratio = 1.0);

    std::span<const std::size_t> intervals() const noexcept { return intervals_; }
    std::size_t levels() const noexcept { return intervals_.size(); }
    double tau_ratio() const noexcept { return tau_ratio_; }
    /// τ for level r on a domain of the given length.
    double tau(std::size_t r, double length) const;

private:
    std::vector<std::size_t> intervals_;
    double tau_ratio_;
};

struct ConvergenceRow {
    std::size_t intervals = 0;
    double h = 0.0;
    double tau = 0.0;
    double max_error = 0.0;
    std::optional<double> rate;
    /// Error energy at the evaluation time; 1D studies with error_energy set.
    std::optional<double> error_energy;
    std::optional<double> energy_rate;
};

struct ConvergenceTable {
    std::string problem_id;
    double alpha = 0.0;
    std::optional<double> beta;
    double theta = 0.0;
    std::string method;
    std::string start;
    double evaluation_time = 0.0;
    std::vector<ConvergenceRow> rows;
};

/// max_i |numeric_i - exact_i|. Throws InvalidInput on length mismatch.
double max_error(std::span<const double> numeric, std::span<const double> exact);
double max_error(const Field2D& numeric, const Field2D& exact);

/// log2(e_{r-1}/e_r) for consecutive errors. Throws InvalidInput for fewer
/// than two errors or a nonpositive error.
std::vector<double> observed_order(std::span<const double> errors);
/// log(e_{r-1}/e_r) / log(h_{r-1}/h_r) for arbitrary ladders.
std::vector<double> observed_order(std::span<const double> errors, std::span<const double> h);

struct StudyOptions {
    StartMode start = StartMode::taylor;
    Method2D method = Method2D::adi;
    /// Measure at this time instead of the problem's final time.
    std::optional<double> evaluation_time;
    /// 1D only: also record the error energy between the last two levels.
    bool error_energy = false;
    /// Run levels concurrently through parallel_for.
    bool concurrent_levels = true;
};

/// Throws InvalidInput when the problem has no exact solution; solver
/// errors propagate.
ConvergenceTable run_study_1d(const WaveProblem1D& problem, const RefinementLadder& ladder,
                              Theta theta, const StudyOptions& options = {});
ConvergenceTable run_study_2d(const WaveProblem2D& problem, const RefinementLadder& ladder,
                              Theta theta, const StudyOptions& options = {});

/// Columns intervals,h,tau,max_error,rate[,error_energy,energy_rate]; empty
/// cells where a value does not exist.
void write_table_csv(std::ostream& out, const ConvergenceTable& table);
/// Aligned text table in the layout "tau | max error | rate" with τ shown as
/// a fraction when it is the reciprocal of an integer.
void write_table_text(std::ostream& out, const ConvergenceTable& table);

}  // namespace rieszwave
