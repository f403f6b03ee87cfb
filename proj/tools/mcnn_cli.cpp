// Command-line driver: train networks, solve the reference problem,
// evaluate checkpoints, or reproduce the whole benchmark in one run.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "mcnn/errors.hpp"
#include "mcnn/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    long seed = -1;
    std::string mode;
    int law = 0;
    bool fast = false;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "config file (key = value)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "base seed override");
    cmd->add_option("--set", args.sets, "extra key=value override")
        ->take_all();
}

mcnn::RunConfig build_config(const CommonArgs& args) {
    mcnn::RunConfig config;
    if (!args.config_path.empty()) config = mcnn::load_config(args.config_path);
    if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);
    if (!args.mode.empty()) config.mode = args.mode;
    if (args.law > 0) config.law = args.law;
    if (args.fast) config.fast = true;
    if (!args.out_dir.empty()) config.out_dir = args.out_dir;
    for (const std::string& kv : args.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw mcnn::ConfigError("--set expects key=value, got '" + kv + "'");
        mcnn::apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    config.validate();
    return config;
}

void print_rows(const std::vector<mcnn::MetricRow>& rows) {
    for (const auto& r : rows)
        std::printf("law %d  %-5s relative error %.4f%%\n", r.law,
                    r.method.c_str(), r.relative_error_percent);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-constitutive PINN solver for large-strain consolidation"};
    app.require_subcommand(1);

    CommonArgs train_args, fd_args, eval_args, repro_args;

    CLI::App* train = app.add_subcommand("train", "train one network");
    add_common(train, train_args);
    train->add_option("--mode", train_args.mode, "mcnn | pinn");
    train->add_option("--law", train_args.law, "law index for pinn mode")
        ->check(CLI::Range(1, 3));
    train->add_flag("--fast", train_args.fast, "reduced schedule");

    CLI::App* fd = app.add_subcommand("fd", "solve the reference problem");
    add_common(fd, fd_args);

    CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint");
    add_common(eval, eval_args);
    std::string checkpoint_path, fd_dir;
    eval->add_option("--checkpoint", checkpoint_path, "checkpoint file")
        ->required();
    eval->add_option("--fd-dir", fd_dir, "directory holding fd_law{k}.csv")
        ->required();
    eval->add_option("--mode", eval_args.mode,
                     "mcnn (all laws) or pinn (one law)");
    eval->add_option("--law", eval_args.law, "law index for pinn checkpoints")
        ->check(CLI::Range(1, 3));

    CLI::App* repro =
        app.add_subcommand("repro", "full benchmark: fd + 4 trainings + eval");
    add_common(repro, repro_args);
    repro->add_flag("--fast", repro_args.fast, "reduced schedule");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (train->parsed()) {
            const mcnn::RunConfig config = build_config(train_args);
            const fs::path dir = config.out_dir;
            mcnn::write_config_echo(config, dir);
            const int law = config.mode == "pinn" ? config.law : 0;
            const mcnn::TrainReport report =
                mcnn::run_train(config, config.mode, law, dir);
            std::printf("trained %s for %ld epochs in %.1f s, final loss %.3e\n",
                        config.mode.c_str(),
                        config.epochs_for(config.mode, law),
                        report.wall_seconds,
                        report.loss_history.empty()
                            ? 0.0
                            : report.loss_history.back().second);
        } else if (fd->parsed()) {
            const mcnn::RunConfig config = build_config(fd_args);
            const fs::path dir = config.out_dir;
            mcnn::write_config_echo(config, dir);
            mcnn::run_fd(config, dir);
            std::printf("wrote fd_law{1,2,3}.csv to %s\n", dir.string().c_str());
        } else if (eval->parsed()) {
            const mcnn::RunConfig config = build_config(eval_args);
            const fs::path dir = config.out_dir;
            mcnn::write_config_echo(config, dir);
            std::vector<int> laws = {1, 2, 3};
            std::string method = "mcnn";
            if (eval_args.mode == "pinn" ||
                (eval_args.mode.empty() && config.mode == "pinn")) {
                laws = {eval_args.law > 0 ? eval_args.law : config.law};
                method = "pinn";
            }
            const auto rows =
                mcnn::run_eval(config, checkpoint_path, fd_dir, dir, laws, method);
            print_rows(rows);
        } else if (repro->parsed()) {
            const mcnn::RunConfig config = build_config(repro_args);
            const fs::path dir = config.out_dir;
            const auto rows = mcnn::run_repro(config, dir);
            print_rows(rows);
            std::printf("summary: %s\n", (dir / "summary.csv").string().c_str());
        }
    } catch (const mcnn::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const mcnn::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
