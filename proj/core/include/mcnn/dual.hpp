#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace mcnn {

/// Forward-mode dual scalar with N tangent slots. Used to differentiate
/// the per-sample loss with respect to the four network-jet fields; the N
/// partials ride along through ordinary arithmetic.
template <std::size_t N>
struct DualN {
    double v = 0.0;
    std::array<double, N> d{};

    DualN() = default;
    DualN(double value) : v(value) {} // NOLINT: implicit from constants

    static DualN seeded(double value, std::size_t slot) {
        DualN x(value);
        x.d[slot] = 1.0;
        return x;
    }

    DualN operator-() const {
        DualN r(-v);
        for (std::size_t i = 0; i < N; ++i) r.d[i] = -d[i];
        return r;
    }

    friend DualN operator+(const DualN& a, const DualN& b) {
        DualN r(a.v + b.v);
        for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
        return r;
    }
    friend DualN operator-(const DualN& a, const DualN& b) {
        DualN r(a.v - b.v);
        for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
        return r;
    }
    friend DualN operator*(const DualN& a, const DualN& b) {
        DualN r(a.v * b.v);
        for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
        return r;
    }
    friend DualN operator/(const DualN& a, const DualN& b) {
        DualN r(a.v / b.v);
        const double inv2 = 1.0 / (b.v * b.v);
        for (std::size_t i = 0; i < N; ++i)
            r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) * inv2;
        return r;
    }

    DualN& operator+=(const DualN& o) { return *this = *this + o; }
    DualN& operator-=(const DualN& o) { return *this = *this - o; }
    DualN& operator*=(const DualN& o) { return *this = *this * o; }
    DualN& operator/=(const DualN& o) { return *this = *this / o; }
};

template <std::size_t N>
inline DualN<N> log(const DualN<N>& a) {
    DualN<N> r(std::log(a.v));
    const double inv = 1.0 / a.v;
    for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * inv;
    return r;
}

template <std::size_t N>
inline DualN<N> sq(const DualN<N>& a) { return a * a; }

inline double sq(double a) { return a * a; }

// plain-double fallbacks so templated kernels accept either scalar type
using std::log;

using Dual4 = DualN<4>;

} // namespace mcnn
