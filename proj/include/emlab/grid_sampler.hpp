#pragma once

// Streaming midpoint-grid evaluation of cosine products
//   f(x_m) = prod_i (1 + a_i cos(2 pi h_i x_m)),  x_m = (m + 1/2)/n,
// for m in huge ranges (up to ~3e8). Phases are re-derived from exact integer
// arithmetic at chunk boundaries and advanced by rotation recurrences inside
// a chunk, so values are identical regardless of chunking/threading and stay
// within ~1e-12 of libm-evaluated cosines. Moment accumulation uses
// compensated sums merged in fixed chunk order (deterministic).

#include <cstdint>
#include <vector>

namespace emlab {

class CosineProductGrid {
public:
    CosineProductGrid(std::vector<std::int64_t> freqs, std::vector<double> amps,
                      std::int64_t n_points);

    std::int64_t size() const { return n_; }

    // Writes f(x_m) for m in [begin, end) into out (length end - begin).
    void fill(std::int64_t begin, std::int64_t end, double* out) const;

    struct Moments {
        double mean = 0.0;      // (1/n) sum f
        double mean_sq = 0.0;   // (1/n) sum f^2
        double mean_pow = 0.0;  // (1/n) sum |f|^p, when p requested (else 0)
    };
    // One parallel deterministic pass; p <= 0 skips the |f|^p moment.
    Moments moments(double p = 0.0) const;

    // Materializes all n values (caller is responsible for the memory cost).
    std::vector<double> values() const;

private:
    std::vector<std::int64_t> freqs_;
    std::vector<double> amps_;
    std::int64_t n_;
};

}  // namespace emlab
