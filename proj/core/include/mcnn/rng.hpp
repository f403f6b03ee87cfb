#pragma once

#include <cstdint>
#include <random>

namespace mcnn {

/// Deterministic uniform generator. mt19937_64 output is fixed by the
/// standard and the [0,1) mapping below uses only the raw bit stream, so
/// sequences are reproducible across platforms and compilers (the libstdc++
/// distribution objects are not, which is why we do not use them).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform double in (0, 1): redraws the (measure-zero) exact 0.
    double uniform_open() {
        double u = uniform();
        while (u == 0.0) u = uniform();
        return u;
    }

    std::uint64_t raw() { return engine_(); }

    /// splitmix64 mix of a base seed and a stream tag, so derived streams
    /// are decorrelated even for adjacent seeds.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (tag + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace mcnn
