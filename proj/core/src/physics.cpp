#include "mcnn/physics.hpp"

#include <cmath>
#include <stdexcept>

#include "mcnn/dual.hpp"

namespace mcnn {

Stratum classify(double x_hat, double t_hat) {
    if (x_hat == 0.0) return Stratum::TopBoundary;
    if (t_hat == 0.0) return Stratum::Initial;
    if (x_hat == 1.0) return Stratum::BottomBoundary;
    return Stratum::Interior;
}

PhysicalJet transform_output(const Jet& jet, double x_hat,
                             const MaterialProps& props) {
    PhysicalJet pj;
    pj.j = props.j_bar + x_hat * jet.n;
    pj.dj_dx = jet.n + x_hat * jet.dn_dx;
    pj.dj_dt = x_hat * jet.dn_dt;
    pj.d2j_dx2 = 2.0 * jet.dn_dx + x_hat * jet.d2n_dx2;
    return pj;
}

namespace {

// residual kernel over a generic scalar type (double or dual)
template <class T>
T residual_kernel(int law, const T& j, const T& jx, const T& jt, const T& jxx,
                  const MaterialProps& p) {
    const double phi3 = p.phi0 * p.phi0 * p.phi0;
    const T d = laws::diffusivity(law, j, p);
    const T dp = laws::diffusivity_derivative(law, j, p);
    return jt - (dp * jx * jx + d * jxx) / T(phi3);
}

// full per-sample loss kernel; comparisons run on plain coordinates only
template <class T>
T loss_kernel(const T& n, const T& nx, const T& nt, const T& nxx,
              const SamplePoint& pt, const MaterialProps& p) {
    const double x = pt.x_hat;
    const T j = T(p.j_bar) + T(x) * n;
    const T jx = n + T(x) * nx;
    const T jt = T(x) * nt;
    const T jxx = T(2.0) * nx + T(x) * nxx;

    // one-hot contraction: only the active law's residual enters
    T r = T(0.0);
    for (int i = 0; i < 3; ++i) {
        const double e = pt.law.e[static_cast<std::size_t>(i)];
        if (e != 0.0) r += T(e) * residual_kernel(i + 1, j, jx, jt, jxx, p);
    }
    T loss = r * r;

    switch (classify(pt.x_hat, pt.t_hat)) {
    case Stratum::TopBoundary:
        loss += sq(j - T(p.j_bar));
        break;
    case Stratum::BottomBoundary:
        loss += sq(jx);
        break;
    case Stratum::Initial:
        loss += sq(j - T(1.0));
        break;
    case Stratum::Interior:
        break;
    }
    return loss;
}

} // namespace

double pde_residual(LawId law, const PhysicalJet& pj, const MaterialProps& props) {
    const double phi3 = props.phi0 * props.phi0 * props.phi0;
    const double d = diffusivity(law, pj.j, props);
    const double dp = diffusivity_derivative(law, pj.j, props);
    return pj.dj_dt - (dp * pj.dj_dx * pj.dj_dx + d * pj.d2j_dx2) / phi3;
}

double sample_loss(const PhysicalJet& pj, const SamplePoint& point,
                   const MaterialProps& props) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double e = point.law.e[static_cast<std::size_t>(i)];
        if (e != 0.0) r += e * pde_residual(LawId(i + 1), pj, props);
    }
    double loss = r * r;
    switch (classify(point.x_hat, point.t_hat)) {
    case Stratum::TopBoundary:
        loss += sq(pj.j - props.j_bar);
        break;
    case Stratum::BottomBoundary:
        loss += sq(pj.dj_dx);
        break;
    case Stratum::Initial:
        loss += sq(pj.j - 1.0);
        break;
    case Stratum::Interior:
        break;
    }
    return loss;
}

double batch_loss(const ParamVector& params, const MlpArch& arch,
                  std::span<const SamplePoint> batch,
                  const MaterialProps& props) {
    if (batch.empty()) throw std::invalid_argument("batch_loss: empty batch");
    const std::vector<Jet> jets = forward_jet_batch(params, arch, batch);
    double sum = 0.0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const PhysicalJet pj = transform_output(jets[i], batch[i].x_hat, props);
        sum += sample_loss(pj, batch[i], props);
    }
    return sum / static_cast<double>(batch.size());
}

SampleLossEval sample_loss_eval(const Jet& jet, const SamplePoint& point,
                                const MaterialProps& props) {
    const Dual4 n = Dual4::seeded(jet.n, 0);
    const Dual4 nx = Dual4::seeded(jet.dn_dx, 1);
    const Dual4 nt = Dual4::seeded(jet.dn_dt, 2);
    const Dual4 nxx = Dual4::seeded(jet.d2n_dx2, 3);
    const Dual4 loss = loss_kernel(n, nx, nt, nxx, point, props);
    return SampleLossEval{loss.v, loss.d[0], loss.d[1], loss.d[2], loss.d[3]};
}

SampleLossFn make_training_loss(std::span<const SamplePoint> batch,
                                const MaterialProps& props) {
    return [batch, props](std::size_t i, const Jet& jet) {
        return sample_loss_eval(jet, batch[i], props);
    };
}

} // namespace mcnn
