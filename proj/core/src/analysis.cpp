#include "mcnn/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mcnn {

double relative_error_percent(std::span<const double> pred,
                              std::span<const double> ref) {
    if (pred.size() != ref.size() || pred.empty())
        throw std::invalid_argument("relative_error: mismatched point sets");
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double r = pred[i] / ref[i] - 1.0;
        sum += r * r;
    }
    return 100.0 * std::sqrt(sum / static_cast<double>(pred.size()));
}

SettlementProfile settlement_profile(std::span<const double> x_nodes,
                                     std::span<const double> j_values,
                                     double t_hat) {
    if (x_nodes.size() != j_values.size())
        throw std::invalid_argument("settlement_profile: size mismatch");
    const std::size_t n = x_nodes.size();
    if (n < 2)
        throw std::invalid_argument("settlement_profile: need >= 2 nodes");

    SettlementProfile prof;
    prof.t_hat = t_hat;
    prof.x_nodes.assign(x_nodes.begin(), x_nodes.end());
    prof.u_values.assign(n, 0.0);
    // cumulative trapezoid of (1 - J) from the bottom up; U(1) = 0
    for (std::size_t k = n - 1; k-- > 0;) {
        const double dx = x_nodes[k + 1] - x_nodes[k];
        prof.u_values[k] = prof.u_values[k + 1] +
                           0.5 * dx * ((1.0 - j_values[k]) + (1.0 - j_values[k + 1]));
    }
    return prof;
}

PressureProfile reconstruct_pressure(std::span<const double> x_nodes,
                                     std::span<const double> j_values,
                                     LawId law, const MaterialProps& props) {
    if (x_nodes.size() != j_values.size() || x_nodes.empty())
        throw std::invalid_argument("reconstruct_pressure: size mismatch");
    PressureProfile prof;
    prof.x_nodes.assign(x_nodes.begin(), x_nodes.end());
    prof.p_values.resize(x_nodes.size());
    const double g0 = stiffness_antiderivative(law, j_values[0], props);
    for (std::size_t k = 0; k < j_values.size(); ++k)
        prof.p_values[k] = stiffness_antiderivative(law, j_values[k], props) - g0;
    return prof;
}

std::vector<double> evaluate_model_on_grid(const ParamVector& params,
                                           const MlpArch& arch, LawId law,
                                           std::span<const GridPoint> points,
                                           const MaterialProps& props) {
    const OneHotLaw oh = encode_law(law);
    std::vector<double> out;
    out.reserve(points.size());
    for (const GridPoint& gp : points) {
        const double n = forward(params, arch, {gp.x_hat, gp.t_hat, oh});
        out.push_back(props.j_bar + gp.x_hat * n);
    }
    return out;
}

} // namespace mcnn
