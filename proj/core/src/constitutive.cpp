#include "mcnn/constitutive.hpp"

#include <stdexcept>
#include <string>

#include "mcnn/errors.hpp"

namespace mcnn {

void MaterialProps::validate() const {
    if (!(phi0 > 0.0) || !(phi0 < 1.0))
        throw ConfigError("MaterialProps: phi0 must lie in (0,1), got " +
                          std::to_string(phi0));
    if (!(j_bar > 1.0 - phi0) || !(j_bar <= 1.0))
        throw ConfigError("MaterialProps: j_bar must lie in (1-phi0, 1], got " +
                          std::to_string(j_bar));
    if (!(gamma_hat >= 0.0))
        throw ConfigError("MaterialProps: gamma_hat must be >= 0");
    if (!(mu_hat > 0.0))
        throw ConfigError("MaterialProps: mu_hat must be > 0");
}

LawId::LawId(int index) : index_(index) {
    if (index < 1 || index > 3)
        throw std::invalid_argument("LawId: index must be 1, 2 or 3, got " +
                                    std::to_string(index));
}

bool OneHotLaw::valid() const {
    int ones = 0;
    for (double c : e) {
        if (c == 1.0)
            ++ones;
        else if (c != 0.0)
            return false;
    }
    return ones == 1;
}

LawId OneHotLaw::law() const {
    if (!valid())
        throw std::invalid_argument("OneHotLaw: not a valid one-hot vector");
    for (int i = 0; i < 3; ++i)
        if (e[static_cast<std::size_t>(i)] == 1.0) return LawId(i + 1);
    throw std::logic_error("OneHotLaw: unreachable");
}

OneHotLaw encode_law(LawId law) {
    OneHotLaw oh;
    oh.e[static_cast<std::size_t>(law.index() - 1)] = 1.0;
    return oh;
}

namespace {

void require_positive(double j) {
    if (!(j > 0.0))
        throw std::domain_error("constitutive: J must be positive, got " +
                                std::to_string(j));
}

void require_above_collapse(double j, const MaterialProps& p) {
    if (!(j > 1.0 - p.phi0))
        throw std::domain_error(
            "constitutive: J <= 1 - phi0 (pore collapse), J = " +
            std::to_string(j));
}

} // namespace

double stiffness_modulus(LawId law, double j, const MaterialProps& props) {
    require_positive(j);
    return laws::stiffness(law.index(), j, props);
}

double stiffness_antiderivative(LawId law, double j, const MaterialProps& props) {
    require_positive(j);
    return laws::stiffness_antiderivative(law.index(), j, props);
}

double mobility(double j, const MaterialProps& props) {
    require_above_collapse(j, props);
    return laws::mobility(j, props);
}

double diffusivity(LawId law, double j, const MaterialProps& props) {
    require_above_collapse(j, props);
    return laws::diffusivity(law.index(), j, props);
}

double diffusivity_derivative(LawId law, double j, const MaterialProps& props) {
    require_above_collapse(j, props);
    return laws::diffusivity_derivative(law.index(), j, props);
}

} // namespace mcnn
