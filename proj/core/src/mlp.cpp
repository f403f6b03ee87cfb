#include "mcnn/mlp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mcnn/errors.hpp"
#include "mcnn/rng.hpp"

namespace mcnn {

int MlpArch::layer_in(int layer) const {
    return layer == 0 ? input_dim : hidden_width;
}

int MlpArch::layer_out(int layer) const {
    return layer == hidden_layers ? output_dim : hidden_width;
}

std::size_t MlpArch::weight_offset(int layer) const {
    std::size_t off = 0;
    for (int l = 0; l < layer; ++l)
        off += static_cast<std::size_t>(layer_out(l)) *
                   static_cast<std::size_t>(layer_in(l)) +
               static_cast<std::size_t>(layer_out(l));
    return off;
}

std::size_t MlpArch::bias_offset(int layer) const {
    return weight_offset(layer) + static_cast<std::size_t>(layer_out(layer)) *
                                      static_cast<std::size_t>(layer_in(layer));
}

std::size_t MlpArch::weight_index(int layer, int row, int col) const {
    return weight_offset(layer) +
           static_cast<std::size_t>(row) *
               static_cast<std::size_t>(layer_in(layer)) +
           static_cast<std::size_t>(col);
}

std::size_t MlpArch::bias_index(int layer, int row) const {
    return bias_offset(layer) + static_cast<std::size_t>(row);
}

std::size_t MlpArch::param_count() const {
    return weight_offset(layer_count());
}

void MlpArch::validate() const {
    if (input_dim < 1 || hidden_layers < 1 || hidden_width < 1 || output_dim < 1)
        throw ConfigError("MlpArch: all dimensions must be >= 1");
}

namespace {

void check_shapes(const ParamVector& params, const MlpArch& arch) {
    arch.validate();
    if (params.values.size() != arch.param_count())
        throw std::invalid_argument(
            "parameter vector has " + std::to_string(params.values.size()) +
            " entries, arch expects " + std::to_string(arch.param_count()));
}

void check_point_dims(const MlpArch& arch) {
    if (arch.input_dim != 5 || arch.output_dim != 1)
        throw std::invalid_argument(
            "SamplePoint evaluation requires input_dim=5, output_dim=1");
}

} // namespace

ParamVector init_params(const MlpArch& arch, std::uint64_t seed) {
    arch.validate();
    ParamVector p;
    p.values.assign(arch.param_count(), 0.0);
    Rng rng(seed);
    // hidden layers only; the output layer stays zero (see header)
    for (int l = 0; l < arch.hidden_layers; ++l) {
        const int fan_in = arch.layer_in(l);
        const int fan_out = arch.layer_out(l);
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        double* w = p.values.data() + arch.weight_offset(l);
        const std::size_t n =
            static_cast<std::size_t>(fan_in) * static_cast<std::size_t>(fan_out);
        for (std::size_t i = 0; i < n; ++i) w[i] = rng.uniform(-bound, bound);
    }
    return p;
}

// ---------------------------------------------------------------------------
// single-point path: plain sequential loops, the reference arithmetic
// ---------------------------------------------------------------------------

namespace {

struct JetState {
    std::vector<double> a, ax, at, axx; // one slot per neuron
    void resize(std::size_t n) {
        a.resize(n);
        ax.resize(n);
        at.resize(n);
        axx.resize(n);
    }
};

Jet eval_jet(const ParamVector& params, const MlpArch& arch,
             const SamplePoint& point) {
    check_shapes(params, arch);
    check_point_dims(arch);

    JetState cur, next;
    cur.resize(5);
    cur.a = {point.x_hat, point.t_hat, point.law.e[0], point.law.e[1],
             point.law.e[2]};
    cur.ax = {1.0, 0.0, 0.0, 0.0, 0.0};
    cur.at = {0.0, 1.0, 0.0, 0.0, 0.0};
    cur.axx = {0.0, 0.0, 0.0, 0.0, 0.0};

    const double* pv = params.values.data();
    for (int l = 0; l < arch.layer_count(); ++l) {
        const int in = arch.layer_in(l);
        const int out = arch.layer_out(l);
        next.resize(static_cast<std::size_t>(out));
        const double* w = pv + arch.weight_offset(l);
        const double* b = pv + arch.bias_offset(l);
        for (int r = 0; r < out; ++r) {
            double z = b[r], zx = 0.0, zt = 0.0, zxx = 0.0;
            const double* wr = w + static_cast<std::size_t>(r) * in;
            for (int c = 0; c < in; ++c) {
                const auto ci = static_cast<std::size_t>(c);
                z += wr[c] * cur.a[ci];
                zx += wr[c] * cur.ax[ci];
                zt += wr[c] * cur.at[ci];
                zxx += wr[c] * cur.axx[ci];
            }
            const auto ri = static_cast<std::size_t>(r);
            if (l == arch.hidden_layers) { // linear output
                next.a[ri] = z;
                next.ax[ri] = zx;
                next.at[ri] = zt;
                next.axx[ri] = zxx;
            } else {
                const double s = std::tanh(z);
                const double sp = 1.0 - s * s;
                const double spp = -2.0 * s * sp;
                next.a[ri] = s;
                next.ax[ri] = sp * zx;
                next.at[ri] = sp * zt;
                next.axx[ri] = spp * zx * zx + sp * zxx;
            }
        }
        std::swap(cur, next);
    }
    return Jet{cur.a[0], cur.ax[0], cur.at[0], cur.axx[0]};
}

} // namespace

double forward(const ParamVector& params, const MlpArch& arch,
               const SamplePoint& point) {
    return eval_jet(params, arch, point).n;
}

Jet forward_jet(const ParamVector& params, const MlpArch& arch,
                const SamplePoint& point) {
    return eval_jet(params, arch, point);
}

// ---------------------------------------------------------------------------
// batched path: per layer one (width x 4B) state, blocks [A | Ax | At | Axx]
// ---------------------------------------------------------------------------

using Mat = Eigen::MatrixXd;
using ConstWMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>;
using WMap = Eigen::Map<
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstVMap = Eigen::Map<const Eigen::VectorXd>;
using VMap = Eigen::Map<Eigen::VectorXd>;

struct MlpWorkspace::Impl {
    std::vector<Mat> pre;  // pre-activation streams per hidden layer
    std::vector<Mat> post; // post-activation streams per hidden layer
    std::vector<Mat> padj; // pre-activation adjoints (reverse pass)
    std::vector<Mat> adj;  // post-activation adjoints
    Mat input;             // input_dim x 4B
    Mat out_row;           // 1 x 4B raw output streams
    Mat loss_row;          // 1 x 4B scaled loss partials
    Eigen::ArrayXXd s, sp, spp, sppp;
    std::vector<Jet> jets;
};

MlpWorkspace::MlpWorkspace() = default;
MlpWorkspace::~MlpWorkspace() = default;
MlpWorkspace::MlpWorkspace(MlpWorkspace&&) noexcept = default;
MlpWorkspace& MlpWorkspace::operator=(MlpWorkspace&&) noexcept = default;

MlpWorkspace::Impl& MlpWorkspace::impl() {
    if (!impl_) impl_ = std::make_unique<Impl>();
    return *impl_;
}

namespace {

// forward sweep; fills pre/post/input/out_row and jets
void batch_forward(const ParamVector& params, const MlpArch& arch,
                   std::span<const SamplePoint> batch, MlpWorkspace::Impl& w) {
    const auto B = static_cast<Eigen::Index>(batch.size());
    const Eigen::Index width = arch.hidden_width;
    const int L = arch.hidden_layers;

    w.pre.resize(static_cast<std::size_t>(L));
    w.post.resize(static_cast<std::size_t>(L));
    w.input.resize(arch.input_dim, 4 * B);
    w.input.setZero();
    for (Eigen::Index i = 0; i < B; ++i) {
        const SamplePoint& pt = batch[static_cast<std::size_t>(i)];
        w.input(0, i) = pt.x_hat;
        w.input(1, i) = pt.t_hat;
        w.input(2, i) = pt.law.e[0];
        w.input(3, i) = pt.law.e[1];
        w.input(4, i) = pt.law.e[2];
        w.input(0, B + i) = 1.0;     // d/dX tangent
        w.input(1, 2 * B + i) = 1.0; // d/dt tangent
    }

    const double* pv = params.values.data();
    const Mat* prev = &w.input;
    for (int l = 0; l < L; ++l) {
        const int in = arch.layer_in(l);
        ConstWMap W(pv + arch.weight_offset(l), width, in);
        ConstVMap b(pv + arch.bias_offset(l), width);
        Mat& pre = w.pre[static_cast<std::size_t>(l)];
        Mat& post = w.post[static_cast<std::size_t>(l)];
        pre.resize(width, 4 * B);
        post.resize(width, 4 * B);
        pre.noalias() = W * (*prev);
        pre.leftCols(B).colwise() += b;

        w.s = pre.leftCols(B).array().tanh();
        w.sp = 1.0 - w.s.square();
        w.spp = -2.0 * w.s * w.sp;
        post.leftCols(B) = w.s.matrix();
        post.middleCols(B, B).array() = w.sp * pre.middleCols(B, B).array();
        post.middleCols(2 * B, B).array() =
            w.sp * pre.middleCols(2 * B, B).array();
        post.rightCols(B).array() =
            w.spp * pre.middleCols(B, B).array().square() +
            w.sp * pre.rightCols(B).array();
        prev = &post;
    }

    ConstWMap Wout(pv + arch.weight_offset(L), 1, width);
    const double bout = pv[arch.bias_index(L, 0)];
    w.out_row.resize(1, 4 * B);
    w.out_row.noalias() = Wout * (*prev);
    w.jets.resize(static_cast<std::size_t>(B));
    for (Eigen::Index i = 0; i < B; ++i) {
        Jet& j = w.jets[static_cast<std::size_t>(i)];
        j.n = w.out_row(0, i) + bout;
        j.dn_dx = w.out_row(0, B + i);
        j.dn_dt = w.out_row(0, 2 * B + i);
        j.d2n_dx2 = w.out_row(0, 3 * B + i);
    }
}

} // namespace

std::vector<Jet> forward_jet_batch(const ParamVector& params,
                                   const MlpArch& arch,
                                   std::span<const SamplePoint> batch) {
    check_shapes(params, arch);
    check_point_dims(arch);
    MlpWorkspace ws;
    batch_forward(params, arch, batch, ws.impl());
    return ws.impl().jets;
}

LossGradResult loss_gradient(const ParamVector& params, const MlpArch& arch,
                             std::span<const SamplePoint> batch,
                             const SampleLossFn& loss_fn, MlpWorkspace& ws) {
    check_shapes(params, arch);
    check_point_dims(arch);
    if (batch.empty()) throw std::invalid_argument("loss_gradient: empty batch");

    auto& w = ws.impl();
    batch_forward(params, arch, batch, w);

    const auto B = static_cast<Eigen::Index>(batch.size());
    const Eigen::Index width = arch.hidden_width;
    const int L = arch.hidden_layers;
    const double inv_b = 1.0 / static_cast<double>(B);

    // per-sample loss and jet partials; mean reduction in fixed index order
    w.loss_row.resize(1, 4 * B);
    double loss_sum = 0.0;
    for (Eigen::Index i = 0; i < B; ++i) {
        const SampleLossEval ev = loss_fn(static_cast<std::size_t>(i),
                                          w.jets[static_cast<std::size_t>(i)]);
        if (!std::isfinite(ev.value))
            throw NumericalError("non-finite loss at sample " +
                                 std::to_string(i));
        loss_sum += ev.value;
        w.loss_row(0, i) = ev.d_n * inv_b;
        w.loss_row(0, B + i) = ev.d_dx * inv_b;
        w.loss_row(0, 2 * B + i) = ev.d_dt * inv_b;
        w.loss_row(0, 3 * B + i) = ev.d_dxx * inv_b;
    }

    LossGradResult res;
    res.loss = loss_sum * inv_b;
    res.grad.values.assign(arch.param_count(), 0.0);
    double* gv = res.grad.values.data();
    const double* pv = params.values.data();

    // output layer: weight grad is a single row, bias grad a scalar
    const Mat& last = w.post[static_cast<std::size_t>(L - 1)];
    {
        WMap gW(gv + arch.weight_offset(L), 1, width);
        gW.noalias() = w.loss_row * last.transpose();
        gv[arch.bias_index(L, 0)] = w.loss_row.leftCols(B).sum();
    }

    ConstWMap Wout(pv + arch.weight_offset(L), 1, width);
    w.adj.resize(static_cast<std::size_t>(L));
    w.padj.resize(static_cast<std::size_t>(L));
    {
        Mat& top = w.adj[static_cast<std::size_t>(L - 1)];
        top.resize(width, 4 * B);
        top.noalias() = Wout.transpose() * w.loss_row;
    }

    for (int l = L - 1; l >= 0; --l) {
        const Mat& pre = w.pre[static_cast<std::size_t>(l)];
        const Mat& post = w.post[static_cast<std::size_t>(l)];
        const Mat& below =
            l > 0 ? w.post[static_cast<std::size_t>(l - 1)] : w.input;
        const Mat& a = w.adj[static_cast<std::size_t>(l)];
        Mat& pa = w.padj[static_cast<std::size_t>(l)];
        pa.resize(width, 4 * B);

        // tanh derivative chain, recovered from the stored activations
        w.s = post.leftCols(B).array();
        w.sp = 1.0 - w.s.square();
        w.spp = -2.0 * w.s * w.sp;
        w.sppp = w.sp * (4.0 * w.s.square() - 2.0 * w.sp);

        auto zx = pre.middleCols(B, B).array();
        auto zt = pre.middleCols(2 * B, B).array();
        auto zxx = pre.rightCols(B).array();
        auto aA = a.leftCols(B).array();
        auto aAx = a.middleCols(B, B).array();
        auto aAt = a.middleCols(2 * B, B).array();
        auto aAxx = a.rightCols(B).array();

        pa.leftCols(B).array() = aA * w.sp + aAx * w.spp * zx +
                                 aAt * w.spp * zt +
                                 aAxx * (w.sppp * zx.square() + w.spp * zxx);
        pa.middleCols(B, B).array() = aAx * w.sp + 2.0 * aAxx * w.spp * zx;
        pa.middleCols(2 * B, B).array() = aAt * w.sp;
        pa.rightCols(B).array() = aAxx * w.sp;

        const int in = arch.layer_in(l);
        WMap gW(gv + arch.weight_offset(l), width, in);
        gW.noalias() = pa * below.transpose();
        VMap gb(gv + arch.bias_offset(l), width);
        gb.noalias() = pa.leftCols(B).rowwise().sum();

        if (l > 0) {
            ConstWMap W(pv + arch.weight_offset(l), width, in);
            Mat& next_adj = w.adj[static_cast<std::size_t>(l - 1)];
            next_adj.resize(in, 4 * B);
            next_adj.noalias() = W.transpose() * pa;
        }
    }
    return res;
}

LossGradResult loss_gradient(const ParamVector& params, const MlpArch& arch,
                             std::span<const SamplePoint> batch,
                             const SampleLossFn& loss_fn) {
    MlpWorkspace ws;
    return loss_gradient(params, arch, batch, loss_fn, ws);
}

} // namespace mcnn
