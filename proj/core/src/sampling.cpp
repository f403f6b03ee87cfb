#include "mcnn/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mcnn/errors.hpp"
#include "mcnn/rng.hpp"

namespace mcnn {

void SamplingPlan::validate() const {
    if (per_law_total < 4)
        throw ConfigError("SamplingPlan: per_law_total must be >= 4");
    const double fracs[] = {interior_fraction, top_fraction, bottom_fraction,
                            initial_fraction};
    double sum = 0.0;
    for (double f : fracs) {
        if (f < 0.0) throw ConfigError("SamplingPlan: negative stratum fraction");
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConfigError("SamplingPlan: fractions sum to " +
                          std::to_string(sum) + ", expected 1");
}

std::vector<SamplePoint> CollocationSet::points() const {
    std::vector<SamplePoint> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples) pts.push_back(s.point);
    return pts;
}

CollocationSet sample_training_set(const SamplingPlan& plan,
                                   std::span<const LawId> laws) {
    plan.validate();
    if (laws.empty())
        throw std::invalid_argument("sample_training_set: empty law set");

    // stratum counts: edge strata rounded, interior takes the remainder
    const long n_top = std::lround(plan.top_fraction * plan.per_law_total);
    const long n_bottom = std::lround(plan.bottom_fraction * plan.per_law_total);
    const long n_initial = std::lround(plan.initial_fraction * plan.per_law_total);
    const long n_interior = plan.per_law_total - n_top - n_bottom - n_initial;
    if (n_interior < 0)
        throw ConfigError("SamplingPlan: edge strata overflow per_law_total");

    CollocationSet set;
    set.samples.reserve(laws.size() * static_cast<std::size_t>(plan.per_law_total));
    for (const LawId law : laws) {
        Rng rng(Rng::derive(plan.seed, static_cast<std::uint64_t>(law.index())));
        const OneHotLaw oh = encode_law(law);
        for (long i = 0; i < n_interior; ++i) {
            const double x = rng.uniform_open();
            const double t = rng.uniform_open();
            set.samples.push_back({{x, t, oh}, Stratum::Interior});
        }
        for (long i = 0; i < n_top; ++i) {
            const double t = 1.0 - rng.uniform(); // (0, 1]
            set.samples.push_back({{0.0, t, oh}, Stratum::TopBoundary});
        }
        for (long i = 0; i < n_bottom; ++i) {
            const double t = 1.0 - rng.uniform();
            set.samples.push_back({{1.0, t, oh}, Stratum::BottomBoundary});
        }
        for (long i = 0; i < n_initial; ++i) {
            const double x = rng.uniform_open();
            set.samples.push_back({{x, 0.0, oh}, Stratum::Initial});
        }
    }
    return set;
}

std::vector<GridPoint> test_grid(int n_x, int n_t) {
    if (n_x < 2) throw std::invalid_argument("test_grid: n_x must be >= 2");
    if (n_t < 1) throw std::invalid_argument("test_grid: n_t must be >= 1");
    std::vector<GridPoint> pts;
    pts.reserve(static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_t));
    for (int j = 0; j < n_t; ++j) {
        const double t = static_cast<double>(j + 1) / n_t;
        for (int i = 0; i < n_x; ++i) {
            const double x = static_cast<double>(i) / (n_x - 1);
            pts.push_back({x, t});
        }
    }
    return pts;
}

} // namespace mcnn
