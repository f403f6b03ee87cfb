#pragma once

#include <cstdint>
#include <vector>

#include "mcnn/mlp.hpp"
#include "mcnn/physics.hpp"

namespace mcnn {

/// How many collocation points to draw per law and how they split across
/// the interior and the three boundary/initial strata.
struct SamplingPlan {
    int per_law_total = 1000;
    double interior_fraction = 0.7;
    double top_fraction = 0.1;
    double bottom_fraction = 0.1;
    double initial_fraction = 0.1;
    std::uint64_t seed = 0;

    void validate() const; // fractions sum to 1 (1e-12), per_law_total >= 4
};

struct LabeledSample {
    SamplePoint point;
    Stratum stratum = Stratum::Interior;
};

struct CollocationSet {
    std::vector<LabeledSample> samples;

    std::vector<SamplePoint> points() const;
};

/// Deterministic training set: for each law, `per_law_total` points split by
/// the plan fractions. Interior points are uniform in (0,1)^2, edge strata
/// uniform along their edge with t > 0, the initial stratum has t = 0 and
/// X in (0,1). Each law draws from its own seed-derived stream, so a law's
/// points do not depend on which other laws are requested.
CollocationSet sample_training_set(const SamplingPlan& plan,
                                   std::span<const LawId> laws);

struct GridPoint {
    double x_hat;
    double t_hat;
};

/// Equispaced evaluation lattice: X_i = i/(n_x-1), t_j = (j+1)/n_t (the t=0
/// row is excluded; the (0,0) corner is discontinuous). Ordered t-major.
std::vector<GridPoint> test_grid(int n_x, int n_t);

} // namespace mcnn
