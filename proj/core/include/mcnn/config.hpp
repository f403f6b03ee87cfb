#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "mcnn/constitutive.hpp"
#include "mcnn/fdref.hpp"
#include "mcnn/mlp.hpp"
#include "mcnn/sampling.hpp"

namespace mcnn {

/// Everything one run needs, parsed from a flat `key = value` file
/// (one key per line, `#` comments) with optional overrides. Unknown keys
/// are rejected. Defaults reproduce the reference setup.
struct RunConfig {
    std::uint64_t seed = 42;
    std::string run_label;
    std::string out_dir = "out";

    MaterialProps props;

    MlpArch arch; // input 5, 5 x 50 tanh, scalar output

    // sampling strata (the same split is used for every training run)
    double interior_fraction = 0.7;
    double top_fraction = 0.1;
    double bottom_fraction = 0.1;
    double initial_fraction = 0.1;

    // training
    std::string mode = "mcnn"; ///< "mcnn" | "pinn"
    int law = 1;               ///< pinn mode only
    double learning_rate = 5e-4;
    long log_every = 100;
    double grad_clip = 0.0;
    int mcnn_points_per_law = 1000;
    int pinn_points = 3000;
    long mcnn_epochs = 100000;
    long pinn_epochs_law1 = 50000;
    long pinn_epochs_law2 = 20000;
    long pinn_epochs_law3 = 10000;

    // reduced schedule selected by --fast
    bool fast = false;
    long fast_mcnn_epochs = 20000;
    long fast_pinn_epochs_law1 = 5000;
    long fast_pinn_epochs_law2 = 2000;
    long fast_pinn_epochs_law3 = 1000;

    // reference solver
    FdGridSpec fd;

    // evaluation lattice
    int eval_n_x = 100;
    int eval_n_t = 100;

    int threads = 1; ///< concurrent runs inside `repro`

    void validate() const;

    long epochs_for(const std::string& run_mode, int run_law) const;
    long pinn_epochs_for(int run_law) const;
};

/// Parse a config file into a RunConfig. Missing file -> ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Apply `key=value` overrides on top of a config. Unknown key, bad value ->
/// ConfigError.
void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value);

/// Canonical echo of every key (defaults included), parseable by
/// load_config. Runs write this next to their outputs.
std::string resolved_config_text(const RunConfig& config);

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin = "<inline>");

} // namespace mcnn
