#pragma once

// Deterministic, implementation-independent randomness:
//  - SplitMix64: scalar PRNG whose output is pinned by the algorithm alone
//    (standard-library distributions are not portable bit-for-bit).
//  - R2 additive sequence: low-discrepancy points in [0,1)^2 whose prefixes
//    are nested, so sup-estimates over the first n points are monotone in n.

#include <cstdint>

namespace emlab {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Uniform in [0, n) without modulo bias issues that matter here: n is
    // tiny relative to 2^64, so plain modulo keeps determinism and accuracy.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }
};

// Generalized golden-ratio (plastic constant) Kronecker sequence: point n is
// frac(0.5 + n*g1), frac(0.5 + n*g2). Prefixes of the sequence are nested.
struct R2Sequence {
    std::uint64_t index = 0;

    static constexpr double g1 = 0.7548776662466927;  // 1/x, x^3 = x + 1
    static constexpr double g2 = 0.5698402909980532;  // 1/x^2

    void point(double& u, double& v) {
        const double n = static_cast<double>(++index);
        u = fractional(0.5 + n * g1);
        v = fractional(0.5 + n * g2);
    }

private:
    static double fractional(double t) { return t - static_cast<std::int64_t>(t); }
};

}  // namespace emlab
