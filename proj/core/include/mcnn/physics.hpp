#pragma once

#include <span>

#include "mcnn/constitutive.hpp"
#include "mcnn/mlp.hpp"

namespace mcnn {

/// Network jet after the hard-constraint output transform: the deformation
/// measure J and its derivatives.
struct PhysicalJet {
    double j = 0.0;
    double dj_dx = 0.0;
    double dj_dt = 0.0;
    double d2j_dx2 = 0.0;
};

/// Which case of the boundary/initial loss a sample falls in.
enum class Stratum { Interior, TopBoundary, BottomBoundary, Initial };

/// Coordinate classification. Precedence: X=0 first (any t; the transform
/// pins J there, so the (0,0) corner belongs to the top case), then t=0,
/// then X=1.
Stratum classify(double x_hat, double t_hat);

/// J = J_bar + X * N and the product-rule derivatives. J(0, t) = J_bar holds
/// exactly for every parameter vector.
PhysicalJet transform_output(const Jet& jet, double x_hat,
                             const MaterialProps& props);

/// Expanded-form residual f_i = dJ/dt - (1/phi0^3) [D'(J) (dJ/dX)^2
/// + D(J) d2J/dX2]. Domain errors from the constitutive functions propagate.
double pde_residual(LawId law, const PhysicalJet& pj, const MaterialProps& props);

/// Composite per-sample loss: (sum_i e_i f_i)^2 plus the boundary/initial
/// term for the sample's stratum. Non-negative.
double sample_loss(const PhysicalJet& pj, const SamplePoint& point,
                   const MaterialProps& props);

/// Arithmetic mean of sample_loss over the batch, fixed summation order.
/// Throws on an empty batch.
double batch_loss(const ParamVector& params, const MlpArch& arch,
                  std::span<const SamplePoint> batch,
                  const MaterialProps& props);

/// sample_loss together with its exact partial derivatives with respect to
/// the raw jet fields, for the training gradient. Unlike sample_loss this
/// path carries no mobility domain guard: for 0 < J <= 1-phi0 it evaluates
/// the same rational/log formulas (finite, possibly negative diffusivity) so
/// the optimizer can steer back into the physical band; J <= 0 produces a
/// non-finite value which the caller treats as fatal.
SampleLossEval sample_loss_eval(const Jet& jet, const SamplePoint& point,
                                const MaterialProps& props);

/// Adapter binding sample_loss_eval to a batch for mlp::loss_gradient.
SampleLossFn make_training_loss(std::span<const SamplePoint> batch,
                                const MaterialProps& props);

} // namespace mcnn
