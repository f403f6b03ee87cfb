#include "mcnn/training.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mcnn/errors.hpp"
#include "mcnn/physics.hpp"
#include "mcnn/rng.hpp"

namespace mcnn {

AdamState AdamState::init(std::size_t n_params, double learning_rate) {
    AdamState s;
    s.first_moment.assign(n_params, 0.0);
    s.second_moment.assign(n_params, 0.0);
    s.learning_rate = learning_rate;
    return s;
}

void adam_step(AdamState& state, ParamVector& params, const ParamVector& grad) {
    const std::size_t n = params.values.size();
    if (grad.values.size() != n || state.first_moment.size() != n ||
        state.second_moment.size() != n)
        throw std::invalid_argument("adam_step: shape mismatch");

    for (double g : grad.values)
        if (!std::isfinite(g))
            throw NumericalError("adam_step: non-finite gradient");

    state.step_count += 1;
    const double b1 = state.beta1;
    const double b2 = state.beta2;
    const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step_count));
    const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step_count));
    for (std::size_t i = 0; i < n; ++i) {
        const double g = grad.values[i];
        double& m = state.first_moment[i];
        double& v = state.second_moment[i];
        m = b1 * m + (1.0 - b1) * g;
        v = b2 * v + (1.0 - b2) * g * g;
        const double m_hat = m / bc1;
        const double v_hat = v / bc2;
        params.values[i] -=
            state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
}

void TrainConfig::validate() const {
    arch.validate();
    plan.validate();
    props.validate();
    if (epochs < 1) throw ConfigError("TrainConfig: epochs must be >= 1");
    if (log_every < 1) throw ConfigError("TrainConfig: log_every must be >= 1");
    if (!(learning_rate > 0.0))
        throw ConfigError("TrainConfig: learning_rate must be > 0");
    if (mode == TrainMode::SingleLaw && !law.has_value())
        throw ConfigError("TrainConfig: SingleLaw mode requires a law");
    if (grad_clip < 0.0) throw ConfigError("TrainConfig: grad_clip must be >= 0");
}

namespace {

void clip_global_norm(ParamVector& grad, double max_norm) {
    double sq_sum = 0.0;
    for (double g : grad.values) sq_sum += g * g;
    const double norm = std::sqrt(sq_sum);
    if (norm > max_norm && norm > 0.0) {
        const double scale = max_norm / norm;
        for (double& g : grad.values) g *= scale;
    }
}

} // namespace

TrainReport train(const TrainConfig& config) {
    config.validate();

    std::vector<LawId> laws;
    if (config.mode == TrainMode::Mcnn) {
        for (LawId l : LawId::all()) laws.push_back(l);
    } else {
        laws.push_back(*config.law);
    }

    SamplingPlan plan = config.plan;
    plan.seed = Rng::derive(config.seed, 0xc011);
    const CollocationSet set = sample_training_set(plan, laws);
    const std::vector<SamplePoint> batch = set.points();

    ParamVector params = init_params(config.arch, config.seed);
    AdamState adam = AdamState::init(params.values.size(), config.learning_rate);
    const SampleLossFn loss_fn = make_training_loss(batch, config.props);
    MlpWorkspace ws;

    TrainReport report;
    const auto t0 = std::chrono::steady_clock::now();
    for (long epoch = 1; epoch <= config.epochs; ++epoch) {
        LossGradResult lg;
        try {
            lg = loss_gradient(params, config.arch, batch, loss_fn, ws);
        } catch (const NumericalError& e) {
            throw NumericalError("epoch " + std::to_string(epoch) + ": " +
                                 e.what());
        }
        if (config.grad_clip > 0.0) clip_global_norm(lg.grad, config.grad_clip);
        adam_step(adam, params, lg.grad);
        if (epoch % config.log_every == 0 || epoch == config.epochs)
            report.loss_history.emplace_back(epoch, lg.loss);
    }
    const auto t1 = std::chrono::steady_clock::now();
    report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.params = std::move(params);
    return report;
}

// ---------------------------------------------------------------------------
// checkpoint + history files
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kMagic = "mcnn-checkpoint";
constexpr int kVersion = 1;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void save_checkpoint(const std::filesystem::path& path,
                     const ParamVector& params, const MlpArch& arch,
                     std::uint64_t seed, long epochs) {
    if (params.values.size() != arch.param_count())
        throw std::invalid_argument("save_checkpoint: params do not match arch");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << kMagic << " v" << kVersion << "\n";
    out << "input_dim " << arch.input_dim << "\n";
    out << "hidden_layers " << arch.hidden_layers << "\n";
    out << "hidden_width " << arch.hidden_width << "\n";
    out << "output_dim " << arch.output_dim << "\n";
    out << "activation tanh\n";
    out << "seed " << seed << "\n";
    out << "epochs " << epochs << "\n";
    out << "params " << params.values.size() << "\n";
    for (double v : params.values) out << fmt17(v) << "\n";
    if (!out) throw ConfigError("write failed: " + path.string());
}

namespace {

long parse_header_field(std::istream& in, const std::string& key) {
    std::string k;
    long v = 0;
    if (!(in >> k >> v) || k != key)
        throw ConfigError("checkpoint: malformed header, expected '" + key + "'");
    return v;
}

} // namespace

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open checkpoint " + path.string());
    std::string magic, version;
    if (!(in >> magic >> version) || magic != kMagic || version != "v1")
        throw ConfigError("checkpoint: bad magic/version in " + path.string());

    Checkpoint cp;
    cp.arch.input_dim = static_cast<int>(parse_header_field(in, "input_dim"));
    cp.arch.hidden_layers =
        static_cast<int>(parse_header_field(in, "hidden_layers"));
    cp.arch.hidden_width =
        static_cast<int>(parse_header_field(in, "hidden_width"));
    cp.arch.output_dim = static_cast<int>(parse_header_field(in, "output_dim"));
    std::string k, act;
    if (!(in >> k >> act) || k != "activation" || act != "tanh")
        throw ConfigError("checkpoint: unsupported activation");
    cp.seed = static_cast<std::uint64_t>(parse_header_field(in, "seed"));
    cp.epochs = parse_header_field(in, "epochs");
    const long count = parse_header_field(in, "params");
    cp.arch.validate();
    if (count < 0 || static_cast<std::size_t>(count) != cp.arch.param_count())
        throw ConfigError("checkpoint: param count " + std::to_string(count) +
                          " does not match arch");

    cp.params.values.resize(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        if (!(in >> cp.params.values[static_cast<std::size_t>(i)]))
            throw ConfigError("checkpoint: truncated at parameter " +
                              std::to_string(i));
    }
    return cp;
}

void save_loss_history(const std::filesystem::path& path,
                       const std::vector<std::pair<long, double>>& history) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "epoch,loss\n";
    for (const auto& [epoch, loss] : history)
        out << epoch << "," << fmt17(loss) << "\n";
    if (!out) throw ConfigError("write failed: " + path.string());
}

} // namespace mcnn
