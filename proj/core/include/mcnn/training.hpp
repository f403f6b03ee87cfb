#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcnn/mlp.hpp"
#include "mcnn/sampling.hpp"

namespace mcnn {

/// Adam optimizer state (bias-corrected first/second moments).
struct AdamState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    long step_count = 0;
    double learning_rate = 5e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState init(std::size_t n_params, double learning_rate);
};

/// One Adam update in place. Throws NumericalError on a non-finite gradient.
void adam_step(AdamState& state, ParamVector& params, const ParamVector& grad);

enum class TrainMode { Mcnn, SingleLaw };

struct TrainConfig {
    TrainMode mode = TrainMode::Mcnn;
    std::optional<LawId> law;  ///< required in SingleLaw mode
    MlpArch arch;
    SamplingPlan plan;
    long epochs = 100000;
    double learning_rate = 5e-4;
    std::uint64_t seed = 0;
    long log_every = 100;
    MaterialProps props;
    double grad_clip = 0.0;    ///< global-norm clip; 0 disables

    void validate() const;
};

struct TrainReport {
    ParamVector params;
    std::vector<std::pair<long, double>> loss_history; // (epoch, loss)
    double wall_seconds = 0.0;
};

/// Full-batch Adam over the plan's collocation set (all three laws in MCNN
/// mode, the selected law only in SingleLaw mode). One gradient step per
/// epoch; fully deterministic for a given config.
TrainReport train(const TrainConfig& config);

/// Text checkpoint: header (format version, arch, seed, epochs, count), then
/// one parameter per line at 17 significant digits. Round-trips bit-exactly.
void save_checkpoint(const std::filesystem::path& path,
                     const ParamVector& params, const MlpArch& arch,
                     std::uint64_t seed, long epochs);

struct Checkpoint {
    ParamVector params;
    MlpArch arch;
    std::uint64_t seed = 0;
    long epochs = 0;
};

/// Throws ConfigError on malformed headers, count mismatches or unparsable
/// values.
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Loss history CSV (`epoch,loss` header plus one row per entry).
void save_loss_history(const std::filesystem::path& path,
                       const std::vector<std::pair<long, double>>& history);

} // namespace mcnn
