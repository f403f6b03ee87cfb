#pragma once

#include <array>
#include <cstdint>

#include "mcnn/dual.hpp"

namespace mcnn {

/// Dimensionless material constants shared by all three laws.
struct MaterialProps {
    double gamma_hat = 1.0 / 3.0; ///< Lame constant (laws 2-3)
    double mu_hat = 1.0 / 3.0;    ///< Lame constant (laws 2-3)
    double phi0 = 0.3;            ///< reference porosity, in (0,1)
    double j_bar = 0.8;           ///< surface-load Dirichlet value, in (0,1]

    /// Throws ConfigError on violated invariants
    /// (phi0 in (0,1), j_bar in (1-phi0, 1], gamma_hat >= 0, mu_hat > 0).
    void validate() const;
};

/// Constitutive-law selector; admissible indices are 1, 2, 3
/// (Saint-Venant Kirchhoff, modified S-V-K, Neo-Hookean).
class LawId {
public:
    explicit LawId(int index);
    int index() const { return index_; }

    friend bool operator==(LawId a, LawId b) { return a.index_ == b.index_; }

    static std::array<LawId, 3> all() {
        return {LawId(1), LawId(2), LawId(3)};
    }

private:
    int index_;
};

/// One-hot law selector fed to the network: exactly one component is 1.
struct OneHotLaw {
    std::array<double, 3> e{};

    bool valid() const;
    /// Index (1-based) of the unit component; requires valid().
    LawId law() const;
};

OneHotLaw encode_law(LawId law);

namespace laws {

// Formula kernels, templated so dual numbers can ride through them.
// No domain guards here: the guarded public API below is the checked
// entry point; the training loss evaluates these directly and relies on
// IEEE NaN propagation for j <= 0 (see physics::sample_loss_eval).

template <class T>
T stiffness(int law, const T& j, const MaterialProps& p) {
    const T j2 = j * j;
    if (law == 1) return (T(3.0) * j2 - T(1.0)) * T(0.5);
    const T common = T(p.gamma_hat) * (T(1.0) - log(j)) / j2;
    if (law == 2) return common + T(p.mu_hat) * (T(3.0) * j2 - T(1.0));
    return common + T(p.mu_hat) * (T(1.0) + T(1.0) / j2);
}

template <class T>
T stiffness_antiderivative(int law, const T& j, const MaterialProps& p) {
    const T j3 = j * j * j;
    if (law == 1) return (j3 - j) * T(0.5);
    const T common = T(p.gamma_hat) * log(j) / j;
    if (law == 2) return common + T(p.mu_hat) * (j3 - j);
    return common + T(p.mu_hat) * (j - T(1.0) / j);
}

template <class T>
T mobility(const T& j, const MaterialProps& p) {
    const T w = j - T(1.0 - p.phi0);
    return w * w * w / (j * j);
}

template <class T>
T diffusivity(int law, const T& j, const MaterialProps& p) {
    return mobility(j, p) * stiffness(law, j, p);
}

// d(diffusivity)/dj by the product rule; each factor's derivative is
// closed form.
template <class T>
T diffusivity_derivative(int law, const T& j, const MaterialProps& p) {
    const T j2 = j * j;
    const T j3 = j2 * j;
    const T w = j - T(1.0 - p.phi0);
    const T m = w * w * w / j2;
    // dm/dj = w^2 (3 j - 2 w) / j^3
    const T dm_dj = w * w * (T(3.0) * j - T(2.0) * w) / j3;
    T g;
    T dg_dj;
    if (law == 1) {
        g = (T(3.0) * j2 - T(1.0)) * T(0.5);
        dg_dj = T(3.0) * j;
    } else {
        const T lg = log(j);
        const T common = T(p.gamma_hat) * (T(1.0) - lg) / j2;
        const T dcommon = T(p.gamma_hat) * (T(2.0) * lg - T(3.0)) / j3;
        if (law == 2) {
            g = common + T(p.mu_hat) * (T(3.0) * j2 - T(1.0));
            dg_dj = dcommon + T(p.mu_hat) * T(6.0) * j;
        } else {
            g = common + T(p.mu_hat) * (T(1.0) + T(1.0) / j2);
            dg_dj = dcommon - T(p.mu_hat) * T(2.0) / j3;
        }
    }
    return dm_dj * g + m * dg_dj;
}

} // namespace laws

/// g_i(J): the coefficient in dp/dX = g_i(J) dJ/dX. Throws std::domain_error
/// for j <= 0.
double stiffness_modulus(LawId law, double j, const MaterialProps& props);

/// Closed-form antiderivative G_i with G_i'(J) = g_i(J); used for pressure
/// reconstruction. Same domain as stiffness_modulus.
double stiffness_antiderivative(LawId law, double j, const MaterialProps& props);

/// Permeability coefficient (J - 1 + phi0)^3 / J^2. Throws std::domain_error
/// for j <= 1 - phi0 (unphysical collapse; no clamping).
double mobility(double j, const MaterialProps& props);

/// D_i(J) = mobility(J) * g_i(J).
double diffusivity(LawId law, double j, const MaterialProps& props);

/// Analytic d/dJ of diffusivity.
double diffusivity_derivative(LawId law, double j, const MaterialProps& props);

} // namespace mcnn
