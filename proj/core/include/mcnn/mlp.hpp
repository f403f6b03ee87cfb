#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "mcnn/constitutive.hpp"

namespace mcnn {

/// Fixed-topology fully connected tanh network: input (X, t, e1, e2, e3),
/// `hidden_layers` tanh layers of `hidden_width` neurons, one linear output.
struct MlpArch {
    int input_dim = 5;
    int hidden_layers = 5;
    int hidden_width = 50;
    int output_dim = 1;

    /// Number of affine maps (hidden layers plus the linear output).
    int layer_count() const { return hidden_layers + 1; }
    int layer_in(int layer) const;
    int layer_out(int layer) const;

    /// Flat-layout metadata: per layer, weights first (row-major, row =
    /// output neuron), then biases.
    std::size_t weight_offset(int layer) const;
    std::size_t bias_offset(int layer) const;
    std::size_t weight_index(int layer, int row, int col) const;
    std::size_t bias_index(int layer, int row) const;
    std::size_t param_count() const;

    void validate() const;

    friend bool operator==(const MlpArch&, const MlpArch&) = default;
};

/// Flat trainable parameters; the layout is defined by an MlpArch.
struct ParamVector {
    std::vector<double> values;
};

/// Point evaluation of the raw network output and its input derivatives.
struct Jet {
    double n = 0.0;       ///< raw output N
    double dn_dx = 0.0;   ///< dN/dX
    double dn_dt = 0.0;   ///< dN/dt
    double d2n_dx2 = 0.0; ///< d2N/dX2
};

/// One training/evaluation sample: unit-square coordinates plus the law
/// selector.
struct SamplePoint {
    double x_hat = 0.0;
    double t_hat = 0.0;
    OneHotLaw law;
};

/// Deterministic init: hidden layers get Glorot-uniform weights
/// (+-sqrt(6/(fan_in+fan_out))) and zero biases; the output layer starts
/// at exactly zero so the raw output N is identically zero. Laws 2-3 take
/// log(J), so the first loss evaluation must start inside the J > 0 domain;
/// N = 0 pins the transformed prediction at J_bar.
ParamVector init_params(const MlpArch& arch, std::uint64_t seed);

/// Raw output N(X, t, e). Plain sequential arithmetic; bit-for-bit equal to
/// forward_jet(...).n.
double forward(const ParamVector& params, const MlpArch& arch,
               const SamplePoint& point);

/// N plus exact analytic dN/dX, dN/dt, d2N/dX2 (forward propagation of
/// first- and second-order input tangents, not finite differences).
Jet forward_jet(const ParamVector& params, const MlpArch& arch,
                const SamplePoint& point);

/// Batched jets (Eigen-backed). Same math as forward_jet up to summation
/// order; agreement is at the 1e-12 level, not bitwise.
std::vector<Jet> forward_jet_batch(const ParamVector& params,
                                   const MlpArch& arch,
                                   std::span<const SamplePoint> batch);

/// Per-sample loss value and its partial derivatives with respect to the
/// four jet fields.
struct SampleLossEval {
    double value = 0.0;
    double d_n = 0.0;
    double d_dx = 0.0;
    double d_dt = 0.0;
    double d_dxx = 0.0;
};

/// Callback mapping (sample index, jet) -> loss evaluation.
using SampleLossFn = std::function<SampleLossEval(std::size_t, const Jet&)>;

struct LossGradResult {
    double loss = 0.0;
    ParamVector grad;
};

/// Reusable buffers for loss_gradient; one instance per training run.
class MlpWorkspace {
public:
    MlpWorkspace();
    ~MlpWorkspace();
    MlpWorkspace(MlpWorkspace&&) noexcept;
    MlpWorkspace& operator=(MlpWorkspace&&) noexcept;

    struct Impl;
    Impl& impl();

private:
    std::unique_ptr<Impl> impl_;
};

/// Mean over the batch of the per-sample losses, together with its exact
/// gradient with respect to every parameter (reverse pass through the jet
/// propagation). Fixed reduction order; identical inputs give bit-identical
/// results. Throws NumericalError (with the sample index) if any per-sample
/// loss is non-finite.
LossGradResult loss_gradient(const ParamVector& params, const MlpArch& arch,
                             std::span<const SamplePoint> batch,
                             const SampleLossFn& loss_fn, MlpWorkspace& ws);

LossGradResult loss_gradient(const ParamVector& params, const MlpArch& arch,
                             std::span<const SamplePoint> batch,
                             const SampleLossFn& loss_fn);

} // namespace mcnn
