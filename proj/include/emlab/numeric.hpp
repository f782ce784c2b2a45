#pragma once

// Small numerical helpers: compensated summation and pairwise reduction.
// Used wherever sums over >1e6 terms must stay well below 1e-10 relative
// error (quadrature moments, weight averages, measure masses).

#include <cstddef>
#include <vector>

namespace emlab {

// Neumaier variant of Kahan summation: error independent of term count.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if ((sum >= v ? sum : -sum) >= (v >= 0 ? v : -v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    // Merge another accumulator (order-dependent; callers combine in a fixed
    // chunk order to stay deterministic).
    void merge(const KahanSum& other) {
        add(other.sum);
        comp += other.comp;
    }
    double value() const { return sum + comp; }
};

// In-place pairwise reduction of consecutive pairs: out[i] = v[2i] + v[2i+1].
// Repeated halving gives O(log n) rounding growth for segment-sum tables.
inline std::vector<double> pairwise_halve(const std::vector<double>& v) {
    std::vector<double> out(v.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[2 * i] + v[2 * i + 1];
    return out;
}

}  // namespace emlab
