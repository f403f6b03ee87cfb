#pragma once

#include <span>
#include <vector>

#include "mcnn/constitutive.hpp"
#include "mcnn/mlp.hpp"
#include "mcnn/sampling.hpp"

namespace mcnn {

/// 100 * sqrt(mean((pred/ref - 1)^2)) over matched point sets.
double relative_error_percent(std::span<const double> pred,
                              std::span<const double> ref);

/// Dimensionless settlement from one J snapshot: U(X) is the trapezoidal
/// integral of (1 - J) from X to 1, so U(1) = 0 exactly.
struct SettlementProfile {
    std::vector<double> x_nodes;
    std::vector<double> u_values;
    double t_hat = 0.0;
};

SettlementProfile settlement_profile(std::span<const double> x_nodes,
                                     std::span<const double> j_values,
                                     double t_hat);

/// Pore pressure from one J snapshot via the closed-form antiderivative:
/// p(X) = G(J(X)) - G(J(0)), datum p(0) = 0 (drained top surface).
struct PressureProfile {
    std::vector<double> x_nodes;
    std::vector<double> p_values;
    double t_hat = 0.0;
};

PressureProfile reconstruct_pressure(std::span<const double> x_nodes,
                                     std::span<const double> j_values,
                                     LawId law, const MaterialProps& props);

/// J = J_bar + X * N(X, t, e) at each grid point under the given law.
std::vector<double> evaluate_model_on_grid(const ParamVector& params,
                                           const MlpArch& arch, LawId law,
                                           std::span<const GridPoint> points,
                                           const MaterialProps& props);

} // namespace mcnn
