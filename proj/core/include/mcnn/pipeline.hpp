#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mcnn/config.hpp"
#include "mcnn/fdref.hpp"
#include "mcnn/training.hpp"

namespace mcnn {

/// One row of a metrics/summary CSV.
struct MetricRow {
    int law = 0;
    std::string method; // "mcnn" | "pinn"
    double relative_error_percent = 0.0;
};

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<MetricRow>& rows);
std::vector<MetricRow> read_metrics_csv(const std::filesystem::path& path);

/// Write the resolved-config echo file into `dir` and return its path.
std::filesystem::path write_config_echo(const RunConfig& config,
                                        const std::filesystem::path& dir);

/// Train one run (`mode` is "mcnn" or "pinn"; `law` applies to pinn).
/// Writes checkpoint_<tag>.txt and loss_<tag>.csv into `dir`; returns the
/// report. Run seeds derive from the base seed: mcnn uses seed, pinn law k
/// uses seed + k.
TrainReport run_train(const RunConfig& config, const std::string& mode,
                      int law, const std::filesystem::path& dir);

/// Solve the reference problem for all three laws; writes fd_law{k}.csv.
void run_fd(const RunConfig& config, const std::filesystem::path& dir);

/// Evaluate a checkpoint against reference CSVs on the test lattice.
/// `laws` selects which laws to score (a pinn checkpoint scores one law).
/// Writes metrics.csv plus the figure-data CSVs into `dir`.
std::vector<MetricRow> run_eval(const RunConfig& config,
                                const std::filesystem::path& checkpoint_path,
                                const std::filesystem::path& fd_dir,
                                const std::filesystem::path& dir,
                                const std::vector<int>& laws,
                                const std::string& method);

/// Full reproduction: FD references, MCNN plus the three per-law baselines,
/// evaluation, and a six-row summary.csv. Deterministic for a fixed config;
/// `threads > 1` runs the trainings concurrently.
std::vector<MetricRow> run_repro(const RunConfig& config,
                                 const std::filesystem::path& dir);

} // namespace mcnn
