#ifndef HJLAB_SWEEP_HPP
#define HJLAB_SWEEP_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "hjlab/config.hpp"

namespace hjlab {

/// Failure wrapper naming the pipeline stage that rejected.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& msg)
        : std::runtime_error("stage '" + stage + "': " + msg), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

/// Runs scalar_channel -> limit solver -> finite-N stats -> concentration
/// (-> Curie-Weiss when enabled) over the configured grid and N list,
/// writing CSVs plus a manifest into out_dir. Output bytes are a pure
/// function of the configuration.
void run_sweep(const ExperimentConfig& cfg, const std::string& out_dir, int threads);

/// The finite-N stage as CSV text (one row per (N,t,h), all report fields
/// plus the approximate-HJ residual columns); shared by `sweep` and the
/// `finite-n` subcommand.
std::string finite_n_csv_text(const ExperimentConfig& cfg, int threads);

struct ConvergenceRow {
    int N = 0;
    double sup_abs_dev = 0.0; // sup over grid of |F_bar - f|
    double sup_msd = 0.0;     // sup over grid of E (F_N - f)^2
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows; // ascending N
    bool msd_strictly_decreasing = false;
    std::string limit_solver;
};

/// Reads a sweep bundle, compares finite-N statistics against the limit
/// solution on the shared grid, writes convergence.csv and returns the
/// table. Rejects bundles whose grids do not match.
ConvergenceReport convergence_report(const std::string& out_dir);

struct PlotsResult {
    std::vector<std::string> scripts;  // files written
    std::vector<std::string> warnings; // skipped figures
};

/// Writes gnuplot scripts next to the bundle CSVs (relative references
/// only). Figures whose CSV is missing are skipped with a warning.
PlotsResult emit_plots(const std::string& out_dir);

} // namespace hjlab

#endif
