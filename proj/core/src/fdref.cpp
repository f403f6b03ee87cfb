#include "mcnn/fdref.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mcnn/errors.hpp"

namespace mcnn {

void FdGridSpec::validate() const {
    if (!(dx > 0.0) || !(dt > 0.0) || !(t_end > 0.0))
        throw ConfigError("FdGridSpec: dx, dt, t_end must be positive");
    const double n = 1.0 / dx;
    if (std::abs(n - std::round(n)) > 1e-9 * n)
        throw ConfigError("FdGridSpec: 1/dx must be an integer, dx = " +
                          std::to_string(dx));
    for (double t : snapshot_times)
        if (t < 0.0 || t > t_end + 1e-12)
            throw ConfigError("FdGridSpec: snapshot outside [0, t_end]");
}

std::vector<double> default_snapshot_times() {
    std::vector<double> times;
    times.reserve(100);
    for (int j = 1; j <= 100; ++j) times.push_back(j / 100.0);
    return times;
}

double stability_check(LawId law, const MaterialProps& props,
                       const FdGridSpec& spec) {
    props.validate();
    FdGridSpec s = spec;
    if (s.snapshot_times.empty()) s.snapshot_times = default_snapshot_times();
    s.validate();

    const double phi3 = props.phi0 * props.phi0 * props.phi0;
    double max_scaled = 0.0;
    const int steps = static_cast<int>(std::ceil((1.0 - props.j_bar) / 1e-3));
    for (int i = 0; i <= steps; ++i) {
        const double j = std::min(props.j_bar + 1e-3 * i, 1.0);
        max_scaled = std::max(max_scaled, diffusivity(law, j, props) / phi3);
    }
    const double bound = spec.dx * spec.dx / (2.0 * max_scaled);
    if (spec.dt > bound)
        throw NumericalError("fd spec unstable: dt = " + std::to_string(spec.dt) +
                             " exceeds the stability bound " +
                             std::to_string(bound));
    return bound;
}

SolutionGrid fd_solve(LawId law, const MaterialProps& props,
                      const FdGridSpec& spec_in) {
    FdGridSpec spec = spec_in;
    if (spec.snapshot_times.empty())
        spec.snapshot_times = default_snapshot_times();
    stability_check(law, props, spec);

    const int n_cells = static_cast<int>(std::round(1.0 / spec.dx));
    const int n_nodes = n_cells + 1;
    const double dx = spec.dx;
    const double dt = spec.dt;
    const double phi3 = props.phi0 * props.phi0 * props.phi0;
    const double coef = dt / (phi3 * dx * dx);
    const long n_steps = std::lround(spec.t_end / dt);

    // map each snapshot to its nearest step
    std::vector<std::pair<long, std::size_t>> snap_steps;
    for (std::size_t i = 0; i < spec.snapshot_times.size(); ++i) {
        long s = std::lround(spec.snapshot_times[i] / dt);
        s = std::clamp(s, 0L, n_steps);
        snap_steps.emplace_back(s, i);
    }
    std::sort(snap_steps.begin(), snap_steps.end());

    SolutionGrid grid;
    grid.x_nodes.resize(static_cast<std::size_t>(n_nodes));
    for (int k = 0; k < n_nodes; ++k)
        grid.x_nodes[static_cast<std::size_t>(k)] = k * dx;
    grid.t_snapshots = spec.snapshot_times;
    grid.j_values.assign(spec.snapshot_times.size(), {});

    std::vector<double> j(static_cast<std::size_t>(n_nodes), 1.0);
    std::vector<double> j_next(static_cast<std::size_t>(n_nodes));
    std::vector<double> flux(static_cast<std::size_t>(n_cells)); // F_{k+1/2} * dx

    std::size_t next_snap = 0;
    auto record = [&](long step) {
        while (next_snap < snap_steps.size() && snap_steps[next_snap].first == step) {
            grid.j_values[snap_steps[next_snap].second] = j;
            ++next_snap;
        }
    };
    record(0);

    for (long step = 1; step <= n_steps; ++step) {
        // interface fluxes, D evaluated at the arithmetic-mean state
        for (int k = 0; k < n_cells; ++k) {
            const auto ki = static_cast<std::size_t>(k);
            const double jm = 0.5 * (j[ki] + j[ki + 1]);
            if (!(jm > 1.0 - props.phi0))
                throw NumericalError(
                    "fd_solve: pore collapse (J <= 1-phi0) at interface " +
                    std::to_string(k) + ", step " + std::to_string(step));
            const double d = laws::diffusivity(law.index(), jm, props);
            flux[ki] = d * (j[ki + 1] - j[ki]);
        }
        j_next[0] = props.j_bar; // Dirichlet from the first step on
        for (int k = 1; k < n_cells; ++k) {
            const auto ki = static_cast<std::size_t>(k);
            j_next[ki] = j[ki] + coef * (flux[ki] - flux[ki - 1]);
        }
        // mirror ghost: F_{K+1/2} = -F_{K-1/2}
        j_next[static_cast<std::size_t>(n_cells)] =
            j[static_cast<std::size_t>(n_cells)] -
            2.0 * coef * flux[static_cast<std::size_t>(n_cells - 1)];

        std::swap(j, j_next);
        if (!std::isfinite(j[static_cast<std::size_t>(n_cells / 2)]))
            throw NumericalError("fd_solve: non-finite state at step " +
                                 std::to_string(step));
        record(step);
    }
    return grid;
}

double interpolate(const SolutionGrid& grid, double x_hat, double t_hat) {
    const auto& xs = grid.x_nodes;
    const auto& ts = grid.t_snapshots;
    if (xs.size() < 2 || ts.size() < 1)
        throw std::invalid_argument("interpolate: degenerate grid");
    const double tol = 1e-12;
    if (x_hat < xs.front() - tol || x_hat > xs.back() + tol ||
        t_hat < ts.front() - tol || t_hat > ts.back() + tol)
        throw std::out_of_range("interpolate: query (" + std::to_string(x_hat) +
                                ", " + std::to_string(t_hat) +
                                ") outside the grid hull");

    auto bracket = [](const std::vector<double>& v, double q) {
        auto it = std::upper_bound(v.begin(), v.end(), q);
        std::size_t hi = static_cast<std::size_t>(it - v.begin());
        if (hi == 0) hi = 1;
        if (hi >= v.size()) hi = v.size() - 1;
        const std::size_t lo = hi - 1;
        double w = (q - v[lo]) / (v[hi] - v[lo]);
        w = std::clamp(w, 0.0, 1.0);
        return std::pair<std::size_t, double>(lo, w);
    };

    if (ts.size() == 1) {
        const auto [ix, wx] = bracket(xs, x_hat);
        const auto& row = grid.j_values[0];
        return (1.0 - wx) * row[ix] + wx * row[ix + 1];
    }
    const auto [ix, wx] = bracket(xs, x_hat);
    const auto [it, wt] = bracket(ts, t_hat);
    const auto& lo = grid.j_values[it];
    const auto& hi = grid.j_values[it + 1];
    const double a = (1.0 - wx) * lo[ix] + wx * lo[ix + 1];
    const double b = (1.0 - wx) * hi[ix] + wx * hi[ix + 1];
    return (1.0 - wt) * a + wt * b;
}

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_solution_csv(const std::filesystem::path& path,
                        const SolutionGrid& grid) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "x_hat,t_hat,j\n";
    for (std::size_t s = 0; s < grid.t_snapshots.size(); ++s)
        for (std::size_t k = 0; k < grid.x_nodes.size(); ++k)
            out << fmt17(grid.x_nodes[k]) << "," << fmt17(grid.t_snapshots[s])
                << "," << fmt17(grid.j_values[s][k]) << "\n";
    if (!out) throw ConfigError("write failed: " + path.string());
}

SolutionGrid read_solution_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open reference CSV " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "x_hat,t_hat,j")
        throw ConfigError("reference CSV: bad header in " + path.string());

    SolutionGrid grid;
    std::vector<double> row;
    double prev_t = -1.0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        double x = 0.0, t = 0.0, j = 0.0;
        char c1 = 0, c2 = 0;
        if (!(ss >> x >> c1 >> t >> c2 >> j) || c1 != ',' || c2 != ',')
            throw ConfigError("reference CSV: malformed line " +
                              std::to_string(line_no) + " in " + path.string());
        if (t != prev_t) {
            if (!row.empty()) {
                grid.j_values.push_back(row);
                row.clear();
            }
            grid.t_snapshots.push_back(t);
            prev_t = t;
            grid.x_nodes.clear();
        }
        grid.x_nodes.push_back(x);
        row.push_back(j);
    }
    if (!row.empty()) grid.j_values.push_back(row);
    if (grid.j_values.empty())
        throw ConfigError("reference CSV: no data rows in " + path.string());
    for (const auto& r : grid.j_values)
        if (r.size() != grid.x_nodes.size())
            throw ConfigError("reference CSV: ragged snapshot rows in " +
                              path.string());
    return grid;
}

} // namespace mcnn
