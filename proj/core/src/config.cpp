#include "mcnn/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "mcnn/errors.hpp"

namespace mcnn {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + v + "' for " + key);
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value '" + v + "' for " + key);
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const unsigned long long d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value '" + v + "' for " + key);
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: bad boolean value '" + v + "' for " + key);
}

// single source of truth for the key set: setters and printers
struct KeyDef {
    std::function<void(RunConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

const std::vector<std::pair<std::string, KeyDef>>& key_table() {
    static const std::vector<std::pair<std::string, KeyDef>> table = [] {
        std::vector<std::pair<std::string, KeyDef>> t;
        auto add_d = [&t](const std::string& k, double RunConfig::* f) {
            t.push_back({k,
                         {[f, k](RunConfig& c, const std::string&, const std::string& v) {
                              c.*f = to_double(k, v);
                          },
                          [f](const RunConfig& c) { return fmt17(c.*f); }}});
        };
        auto add_l = [&t](const std::string& k, long RunConfig::* f) {
            t.push_back({k,
                         {[f, k](RunConfig& c, const std::string&, const std::string& v) {
                              c.*f = to_long(k, v);
                          },
                          [f](const RunConfig& c) { return std::to_string(c.*f); }}});
        };
        auto add_i = [&t](const std::string& k, int RunConfig::* f) {
            t.push_back({k,
                         {[f, k](RunConfig& c, const std::string&, const std::string& v) {
                              c.*f = static_cast<int>(to_long(k, v));
                          },
                          [f](const RunConfig& c) { return std::to_string(c.*f); }}});
        };
        auto add_s = [&t](const std::string& k, std::string RunConfig::* f) {
            t.push_back({k,
                         {[f](RunConfig& c, const std::string&, const std::string& v) {
                              c.*f = v;
                          },
                          [f](const RunConfig& c) { return c.*f; }}});
        };

        t.push_back({"seed",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.seed = to_u64(k, v);
                      },
                      [](const RunConfig& c) { return std::to_string(c.seed); }}});
        add_s("run_label", &RunConfig::run_label);
        add_s("out_dir", &RunConfig::out_dir);

        t.push_back({"props.gamma_hat",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.props.gamma_hat = to_double(k, v);
                      },
                      [](const RunConfig& c) { return fmt17(c.props.gamma_hat); }}});
        t.push_back({"props.mu_hat",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.props.mu_hat = to_double(k, v);
                      },
                      [](const RunConfig& c) { return fmt17(c.props.mu_hat); }}});
        t.push_back({"props.phi0",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.props.phi0 = to_double(k, v);
                      },
                      [](const RunConfig& c) { return fmt17(c.props.phi0); }}});
        t.push_back({"props.j_bar",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.props.j_bar = to_double(k, v);
                      },
                      [](const RunConfig& c) { return fmt17(c.props.j_bar); }}});

        t.push_back({"arch.hidden_layers",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.arch.hidden_layers = static_cast<int>(to_long(k, v));
                      },
                      [](const RunConfig& c) {
                          return std::to_string(c.arch.hidden_layers);
                      }}});
        t.push_back({"arch.hidden_width",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.arch.hidden_width = static_cast<int>(to_long(k, v));
                      },
                      [](const RunConfig& c) {
                          return std::to_string(c.arch.hidden_width);
                      }}});

        add_d("sampling.interior_fraction", &RunConfig::interior_fraction);
        add_d("sampling.top_fraction", &RunConfig::top_fraction);
        add_d("sampling.bottom_fraction", &RunConfig::bottom_fraction);
        add_d("sampling.initial_fraction", &RunConfig::initial_fraction);

        add_s("train.mode", &RunConfig::mode);
        add_i("train.law", &RunConfig::law);
        add_d("train.learning_rate", &RunConfig::learning_rate);
        add_l("train.log_every", &RunConfig::log_every);
        add_d("train.grad_clip", &RunConfig::grad_clip);
        add_i("train.mcnn_points_per_law", &RunConfig::mcnn_points_per_law);
        add_i("train.pinn_points", &RunConfig::pinn_points);
        add_l("train.mcnn_epochs", &RunConfig::mcnn_epochs);
        add_l("train.pinn_epochs_law1", &RunConfig::pinn_epochs_law1);
        add_l("train.pinn_epochs_law2", &RunConfig::pinn_epochs_law2);
        add_l("train.pinn_epochs_law3", &RunConfig::pinn_epochs_law3);

        t.push_back({"fast",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.fast = to_bool(k, v);
                      },
                      [](const RunConfig& c) {
                          return std::string(c.fast ? "true" : "false");
                      }}});
        add_l("fast.mcnn_epochs", &RunConfig::fast_mcnn_epochs);
        add_l("fast.pinn_epochs_law1", &RunConfig::fast_pinn_epochs_law1);
        add_l("fast.pinn_epochs_law2", &RunConfig::fast_pinn_epochs_law2);
        add_l("fast.pinn_epochs_law3", &RunConfig::fast_pinn_epochs_law3);

        t.push_back({"fd.dx",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.fd.dx = to_double(k, v);
                      },
                      [](const RunConfig& c) { return fmt17(c.fd.dx); }}});
        t.push_back({"fd.dt",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.fd.dt = to_double(k, v);
                      },
                      [](const RunConfig& c) { return fmt17(c.fd.dt); }}});
        t.push_back({"fd.t_end",
                     {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.fd.t_end = to_double(k, v);
                      },
                      [](const RunConfig& c) { return fmt17(c.fd.t_end); }}});

        add_i("eval.n_x", &RunConfig::eval_n_x);
        add_i("eval.n_t", &RunConfig::eval_n_t);
        add_i("threads", &RunConfig::threads);
        return t;
    }();
    return table;
}

const KeyDef* find_key(const std::string& key) {
    for (const auto& [k, def] : key_table())
        if (k == key) return &def;
    return nullptr;
}

} // namespace

void RunConfig::validate() const {
    props.validate();
    arch.validate();
    if (arch.input_dim != 5 || arch.output_dim != 1)
        throw ConfigError("config: arch must have input_dim 5, output_dim 1");
    if (mode != "mcnn" && mode != "pinn")
        throw ConfigError("config: train.mode must be 'mcnn' or 'pinn', got '" +
                          mode + "'");
    if (law < 1 || law > 3)
        throw ConfigError("config: train.law must be 1, 2 or 3");
    if (mcnn_points_per_law < 4 || pinn_points < 4)
        throw ConfigError("config: training point counts must be >= 4");
    if (mcnn_epochs < 1 || pinn_epochs_law1 < 1 || pinn_epochs_law2 < 1 ||
        pinn_epochs_law3 < 1 || fast_mcnn_epochs < 1 ||
        fast_pinn_epochs_law1 < 1 || fast_pinn_epochs_law2 < 1 ||
        fast_pinn_epochs_law3 < 1)
        throw ConfigError("config: epoch counts must be >= 1");
    if (eval_n_x < 2 || eval_n_t < 1)
        throw ConfigError("config: eval grid must be at least 2 x 1");
    if (threads < 1) throw ConfigError("config: threads must be >= 1");
    SamplingPlan plan;
    plan.per_law_total = mcnn_points_per_law;
    plan.interior_fraction = interior_fraction;
    plan.top_fraction = top_fraction;
    plan.bottom_fraction = bottom_fraction;
    plan.initial_fraction = initial_fraction;
    plan.validate();
    FdGridSpec f = fd;
    if (f.snapshot_times.empty()) f.snapshot_times = default_snapshot_times();
    f.validate();
}

long RunConfig::pinn_epochs_for(int run_law) const {
    switch (run_law) {
    case 1: return fast ? fast_pinn_epochs_law1 : pinn_epochs_law1;
    case 2: return fast ? fast_pinn_epochs_law2 : pinn_epochs_law2;
    case 3: return fast ? fast_pinn_epochs_law3 : pinn_epochs_law3;
    default: throw ConfigError("config: law must be 1, 2 or 3");
    }
}

long RunConfig::epochs_for(const std::string& run_mode, int run_law) const {
    if (run_mode == "mcnn") return fast ? fast_mcnn_epochs : mcnn_epochs;
    return pinn_epochs_for(run_law);
}

void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value) {
    const KeyDef* def = find_key(key);
    if (!def) throw ConfigError("config: unknown key '" + key + "'");
    def->set(config, key, value);
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig config;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": empty key or value");
        apply_override(config, key, value);
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

std::string resolved_config_text(const RunConfig& config) {
    std::ostringstream out;
    for (const auto& [key, def] : key_table()) {
        const std::string v = def.get(config);
        if (v.empty()) continue; // skip empty strings (unset labels)
        out << key << " = " << v << "\n";
    }
    return out.str();
}

} // namespace mcnn
