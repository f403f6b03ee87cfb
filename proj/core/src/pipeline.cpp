#include "mcnn/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include "mcnn/analysis.hpp"
#include "mcnn/errors.hpp"
#include "mcnn/physics.hpp"

namespace mcnn {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string run_tag(const std::string& mode, int law) {
    return mode == "mcnn" ? "mcnn" : "pinn_law" + std::to_string(law);
}

SamplingPlan plan_for(const RunConfig& config, const std::string& mode) {
    SamplingPlan plan;
    plan.per_law_total =
        mode == "mcnn" ? config.mcnn_points_per_law : config.pinn_points;
    plan.interior_fraction = config.interior_fraction;
    plan.top_fraction = config.top_fraction;
    plan.bottom_fraction = config.bottom_fraction;
    plan.initial_fraction = config.initial_fraction;
    return plan;
}

} // namespace

void write_metrics_csv(const fs::path& path, const std::vector<MetricRow>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "law,method,relative_error_percent\n";
    for (const MetricRow& r : rows)
        out << r.law << "," << r.method << ","
            << fmt17(r.relative_error_percent) << "\n";
    if (!out) throw ConfigError("write failed: " + path.string());
}

std::vector<MetricRow> read_metrics_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open metrics CSV " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "law,method,relative_error_percent")
        throw ConfigError("metrics CSV: bad header in " + path.string());
    std::vector<MetricRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        MetricRow r;
        char c1 = 0, c2 = 0;
        if (!(ss >> r.law >> c1) || c1 != ',')
            throw ConfigError("metrics CSV: malformed row in " + path.string());
        std::getline(ss, r.method, ',');
        if (!(ss >> r.relative_error_percent))
            throw ConfigError("metrics CSV: malformed row in " + path.string());
        rows.push_back(r);
    }
    return rows;
}

fs::path write_config_echo(const RunConfig& config, const fs::path& dir) {
    fs::create_directories(dir);
    const fs::path path = dir / "config_resolved.txt";
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << resolved_config_text(config);
    if (!out) throw ConfigError("write failed: " + path.string());
    return path;
}

TrainReport run_train(const RunConfig& config, const std::string& mode, int law,
                      const fs::path& dir) {
    config.validate();
    if (mode != "mcnn" && mode != "pinn")
        throw ConfigError("run_train: mode must be 'mcnn' or 'pinn'");
    fs::create_directories(dir);

    TrainConfig tc;
    tc.mode = mode == "mcnn" ? TrainMode::Mcnn : TrainMode::SingleLaw;
    if (tc.mode == TrainMode::SingleLaw) tc.law = LawId(law);
    tc.arch = config.arch;
    tc.plan = plan_for(config, mode);
    tc.epochs = config.epochs_for(mode, law);
    tc.learning_rate = config.learning_rate;
    tc.seed = mode == "mcnn" ? config.seed
                             : config.seed + static_cast<std::uint64_t>(law);
    tc.log_every = config.log_every;
    tc.props = config.props;
    tc.grad_clip = config.grad_clip;

    TrainReport report = train(tc);
    const std::string tag = run_tag(mode, law);
    save_checkpoint(dir / ("checkpoint_" + tag + ".txt"), report.params,
                    tc.arch, tc.seed, tc.epochs);
    save_loss_history(dir / ("loss_" + tag + ".csv"), report.loss_history);
    return report;
}

void run_fd(const RunConfig& config, const fs::path& dir) {
    config.validate();
    fs::create_directories(dir);
    FdGridSpec spec = config.fd;
    if (spec.snapshot_times.empty())
        spec.snapshot_times = default_snapshot_times();
    for (LawId law : LawId::all()) {
        const SolutionGrid grid = fd_solve(law, config.props, spec);
        write_solution_csv(dir / ("fd_law" + std::to_string(law.index()) + ".csv"),
                           grid);
    }
}

namespace {

// figure exports for one law: the J comparison on the lattice and the
// settlement comparison at a few representative times
void write_figure_csvs(const RunConfig& config, const ParamVector& params,
                       const MlpArch& arch, LawId law, const SolutionGrid& ref,
                       std::span<const GridPoint> grid_pts,
                       std::span<const double> pred,
                       std::span<const double> refv, const fs::path& dir) {
    const std::string tag = std::to_string(law.index());
    {
        std::ofstream out(dir / ("fig2_law" + tag + ".csv"));
        if (!out) throw ConfigError("cannot write fig2_law" + tag + ".csv");
        out << "x_hat,t_hat,j_pred,j_ref,abs_diff\n";
        for (std::size_t i = 0; i < grid_pts.size(); ++i)
            out << fmt17(grid_pts[i].x_hat) << "," << fmt17(grid_pts[i].t_hat)
                << "," << fmt17(pred[i]) << "," << fmt17(refv[i]) << ","
                << fmt17(std::abs(pred[i] - refv[i])) << "\n";
    }

    for (const double t : {0.1, 0.25, 0.5, 1.0}) {
        std::vector<double> j_pred, j_ref;
        for (const double x : ref.x_nodes) {
            const double n = forward(params, arch, {x, t, encode_law(law)});
            j_pred.push_back(config.props.j_bar + x * n);
            j_ref.push_back(interpolate(ref, x, t));
        }
        const SettlementProfile up =
            settlement_profile(ref.x_nodes, j_pred, t);
        const SettlementProfile ur = settlement_profile(ref.x_nodes, j_ref, t);
        char tbuf[16];
        std::snprintf(tbuf, sizeof tbuf, "%.2f", t);
        std::ofstream out(dir / ("fig3_law" + tag + "_t" + tbuf + ".csv"));
        if (!out) throw ConfigError("cannot write fig3_law" + tag + " csv");
        out << "x_hat,u_pred,u_ref\n";
        for (std::size_t k = 0; k < ref.x_nodes.size(); ++k)
            out << fmt17(ref.x_nodes[k]) << "," << fmt17(up.u_values[k]) << ","
                << fmt17(ur.u_values[k]) << "\n";
    }
}

} // namespace

std::vector<MetricRow> run_eval(const RunConfig& config,
                                const fs::path& checkpoint_path,
                                const fs::path& fd_dir, const fs::path& dir,
                                const std::vector<int>& laws,
                                const std::string& method) {
    config.validate();
    fs::create_directories(dir);
    const Checkpoint cp = load_checkpoint(checkpoint_path);
    if (cp.arch.input_dim != 5 || cp.arch.output_dim != 1)
        throw ConfigError("run_eval: checkpoint arch incompatible (need 5 -> 1)");

    const std::vector<GridPoint> grid_pts =
        test_grid(config.eval_n_x, config.eval_n_t);

    std::vector<MetricRow> rows;
    for (const int law_index : laws) {
        const LawId law(law_index);
        const fs::path ref_path =
            fd_dir / ("fd_law" + std::to_string(law_index) + ".csv");
        const SolutionGrid ref = read_solution_csv(ref_path);

        const std::vector<double> pred = evaluate_model_on_grid(
            cp.params, cp.arch, law, grid_pts, config.props);
        std::vector<double> refv;
        refv.reserve(grid_pts.size());
        for (const GridPoint& gp : grid_pts)
            refv.push_back(interpolate(ref, gp.x_hat, gp.t_hat));

        rows.push_back(
            {law_index, method, relative_error_percent(pred, refv)});
        write_figure_csvs(config, cp.params, cp.arch, law, ref, grid_pts, pred,
                          refv, dir);
    }
    write_metrics_csv(dir / "metrics.csv", rows);
    return rows;
}

std::vector<MetricRow> run_repro(const RunConfig& config, const fs::path& dir) {
    config.validate();
    fs::create_directories(dir);
    write_config_echo(config, dir);
    run_fd(config, dir);

    struct RunSpec {
        std::string mode;
        int law;
    };
    const std::vector<RunSpec> specs = {
        {"mcnn", 0}, {"pinn", 1}, {"pinn", 2}, {"pinn", 3}};

    if (config.threads > 1) {
        std::vector<std::future<void>> futs;
        futs.reserve(specs.size());
        for (const RunSpec& rs : specs)
            futs.push_back(std::async(std::launch::async, [&, rs] {
                run_train(config, rs.mode, rs.law, dir);
            }));
        for (auto& f : futs) f.get(); // rethrows run failures
    } else {
        for (const RunSpec& rs : specs) run_train(config, rs.mode, rs.law, dir);
    }

    std::vector<MetricRow> summary;
    {
        const auto rows = run_eval(config, dir / "checkpoint_mcnn.txt", dir,
                                   dir / "eval_mcnn", {1, 2, 3}, "mcnn");
        summary.insert(summary.end(), rows.begin(), rows.end());
    }
    for (int law = 1; law <= 3; ++law) {
        const auto rows = run_eval(
            config, dir / ("checkpoint_pinn_law" + std::to_string(law) + ".txt"),
            dir, dir / ("eval_pinn_law" + std::to_string(law)), {law}, "pinn");
        summary.insert(summary.end(), rows.begin(), rows.end());
    }
    write_metrics_csv(dir / "summary.csv", summary);
    return summary;
}

} // namespace mcnn
