#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "doctest.h"
#include "emlab/errors.hpp"
#include "emlab/grid_sampler.hpp"
#include "emlab/lacunary.hpp"
#include "emlab/riesz.hpp"

using namespace emlab;

namespace {

constexpr double kA0 = 1.0 / (4.0 * std::numbers::pi);

RieszProduct make_rp(int order, AmplitudeSchedule sched = AmplitudeSchedule::sqrt_schedule()) {
    return RieszProduct(make_lacunary(order, LacunaryVariant::Standard), sched, order);
}

double closed_form_mean_sq(const std::vector<double>& amps) {
    double p = 1.0;
    for (double a : amps) p *= 1.0 + a * a / 2.0;
    return p;
}

}  // namespace

TEST_CASE("construction validates order and pair") {
    const LacunaryPair pair = make_lacunary(3, LacunaryVariant::Standard);
    const auto sched = AmplitudeSchedule::sqrt_schedule();
    CHECK_THROWS_AS(RieszProduct(pair, sched, 0), std::invalid_argument);
    CHECK_THROWS_AS(RieszProduct(pair, sched, 4), std::invalid_argument);
    LacunaryPair broken = pair;
    broken.h[1] = 5;
    CHECK_THROWS_AS(RieszProduct(broken, sched, 3), std::invalid_argument);
}

TEST_CASE("pointwise product value against hand arithmetic") {
    const RieszProduct rp = make_rp(2);
    const double a1 = kA0, a2 = kA0 / std::sqrt(2.0);
    // x = 0: every cosine is 1.
    CHECK(rp.eval(0.0) == doctest::Approx((1.0 + a1) * (1.0 + a2)).epsilon(1e-14));
    // x = 1/8: cos(2 pi 4 / 8) = 1? no: cos(pi) = -1; cos(2 pi 16 / 8) = 1.
    CHECK(rp.eval(0.125) == doctest::Approx((1.0 - a1) * (1.0 + a2)).epsilon(1e-14));
    // Strict positivity on a scan.
    for (int m = 0; m < 1000; ++m) CHECK(rp.eval(m / 1000.0) > 0.0);
}

TEST_CASE("sparse expansion: term count, DC, and a product coefficient") {
    const RieszProduct rp = make_rp(2);
    const FourierExpansion exp = riesz_fourier(rp);
    CHECK(exp.term_count() == 9);  // 3^2 signed-frequency combinations
    CHECK(exp.coefficient(0) == 1.0);
    const double a1 = kA0, a2 = kA0 / std::sqrt(2.0);
    // Exponential convention: each cosine contributes a/2 per sign choice.
    CHECK(exp.coefficient(4) == doctest::Approx(a1 / 2.0).epsilon(1e-15));
    CHECK(exp.coefficient(16) == doctest::Approx(a2 / 2.0).epsilon(1e-15));
    CHECK(exp.coefficient(20) == doctest::Approx(a1 * a2 / 4.0).epsilon(1e-15));
    CHECK(exp.coefficient(12) == doctest::Approx(a1 * a2 / 4.0).epsilon(1e-15));
    CHECK(exp.coefficient(-20) == exp.coefficient(20));
    CHECK(exp.coefficient(5) == 0.0);
    CHECK(exp.max_frequency() == 20);
    CHECK_THROWS_AS(riesz_fourier(make_rp(17)), ResourceLimitError);
}

TEST_CASE("mean is one by every route") {
    for (int j : {1, 3, 6}) {
        for (auto sched : {AmplitudeSchedule::sqrt_schedule(), AmplitudeSchedule::linear_schedule(),
                           AmplitudeSchedule::scaled(0.9)}) {
            const RieszProduct rp = make_rp(j, sched);
            CHECK(riesz_l1(rp) == 1.0);
            CHECK(riesz_l1_quadrature(rp) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // Explicitly refined quadrature agrees too.
    CHECK(riesz_l1_quadrature(make_rp(2), 4096) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(riesz_l1_quadrature(make_rp(3), 100), ResolutionError);
}

TEST_CASE("Parseval matches the closed form and the quadrature route") {
    for (int j : {1, 2, 4, 6}) {
        const RieszProduct rp = make_rp(j);
        const double cf = std::sqrt(closed_form_mean_sq(rp.amplitudes()));
        CHECK(riesz_l2_closed_form(rp) == doctest::Approx(cf).epsilon(1e-15));
        CHECK(riesz_l2(rp) == doctest::Approx(cf).epsilon(1e-12));
        CHECK(riesz_lp(rp, 2.0) == doctest::Approx(cf).epsilon(1e-11));
    }
    // Norms are ordered in p.
    const RieszProduct rp = make_rp(4, AmplitudeSchedule::scaled(0.9));
    const double l2 = riesz_lp(rp, 2.0);
    const double l3 = riesz_lp(rp, 3.0);
    CHECK(1.0 < l2);
    CHECK(l2 < l3);
    CHECK_THROWS_AS(riesz_lp(rp, 1.0), std::invalid_argument);
}

TEST_CASE("primitive of the product") {
    const RieszProduct rp1 = make_rp(1);
    // F(1/8) = 1/8 + a sin(pi)/(8 pi) = 1/8 exactly.
    CHECK(riesz_cdf(rp1, 0.125) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(riesz_cdf(rp1, 0.0) == 0.0);
    CHECK(riesz_cdf(rp1, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    const RieszProduct rp3 = make_rp(3, AmplitudeSchedule::scaled(0.9));
    double prev = 0.0;
    for (int m = 0; m <= 200; ++m) {
        const double f = riesz_cdf(rp3, m / 200.0);
        CHECK(f >= prev - 1e-14);  // strictly positive density
        prev = f;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(riesz_cdf(rp1, 1.5), std::invalid_argument);
}

TEST_CASE("mass concentration diagnostics trend under the stress schedule") {
    const auto stress = AmplitudeSchedule::scaled(0.9);
    const auto d4 = singularity_diagnostics(make_rp(4, stress), 4096, {0.9});
    const auto d6 = singularity_diagnostics(make_rp(6, stress), 65536, {0.9});
    CHECK(d4.mean == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d6.mean == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d4.median < 1.0);
    CHECK(d6.median < d4.median);
    CHECK(d4.mass_support_fraction(0.9) < 0.9);
    CHECK(d6.mass_support_fraction(0.9) < d4.mass_support_fraction(0.9));
    CHECK(d4.order == 4);
    CHECK_THROWS_AS(d4.mass_support_fraction(0.5), std::invalid_argument);
}

TEST_CASE("diagnostics grid policy") {
    const RieszProduct rp = make_rp(4);
    CHECK_THROWS_AS(singularity_diagnostics(rp, 1024, {0.9}), ResolutionError);
    CHECK_THROWS_AS(
        singularity_diagnostics(rp, 1024, {0.9}, ResolutionPolicy::Subsampled),
        std::invalid_argument);  // subsampled still wants >= 2^16 cells
    CHECK_THROWS_AS(singularity_diagnostics(make_rp(16), std::int64_t{1} << 26, {0.9},
                                            ResolutionPolicy::Subsampled),
                    ResourceLimitError);
    CHECK_THROWS_AS(singularity_diagnostics(rp, 4096, {1.5}), std::invalid_argument);
}

// The deep-order diagnostics subsample R_16 on a prime grid. Justify that by
// exact residue combinatorics (meet-in-the-middle over signed frequency sums)
// and tie the streaming-grid moments to the closed-form algebra.
TEST_CASE("prime subsample grid is alias-free where it must be") {
    const std::int64_t p = kSubsampleDiagnosticGrid;
    const auto stress = AmplitudeSchedule::scaled(0.9);
    const RieszProduct rp = make_rp(16, stress);
    const auto freqs = rp.frequencies();
    const auto amps = rp.amplitudes();

    // Residue -> accumulated coefficient weight over all digit choices for
    // the index range [lo, hi); digits d with per-layer weights w(d).
    const auto residue_table = [&](int lo, int hi, const std::vector<int>& digits,
                                   const auto& layer_weight) {
        std::unordered_map<std::int64_t, double> table;
        table.reserve(1u << 20);
        table[0] = 1.0;
        for (int i = lo; i < hi; ++i) {
            std::unordered_map<std::int64_t, double> next;
            next.reserve(table.size() * digits.size());
            const std::int64_t h = freqs[static_cast<std::size_t>(i)] % p;
            for (const auto& [r, w] : table) {
                for (int d : digits) {
                    std::int64_t nr = (r + d * h) % p;
                    if (nr < 0) nr += p;
                    next[nr] += w * layer_weight(i, d);
                }
            }
            table = std::move(next);
        }
        return table;
    };
    const auto paired_mass = [&](const std::unordered_map<std::int64_t, double>& left,
                                 const std::unordered_map<std::int64_t, double>& right) {
        double total = 0.0;
        for (const auto& [r, w] : right) {
            const auto it = left.find(r == 0 ? 0 : p - r);
            if (it != left.end()) total += w * it->second;
        }
        return total;
    };

    // First order (the product itself): counting weights. The only combo with
    // a signed frequency sum divisible by p is the all-zero one, so the
    // subsampled mean of R_16 is exact.
    const auto ones = [](int, int) { return 1.0; };
    const double first = paired_mass(residue_table(0, 8, {-1, 0, 1}, ones),
                                     residue_table(8, 16, {-1, 0, 1}, ones));
    CHECK(first == 1.0);

    // Second order (R_16^2): squared-product digits -2..2 with coefficient
    // weights 1 + a^2/2, a, a^2/4. Collisions exist; their weighted mass
    // bounds the subsampling error of the second moment.
    const auto sq_weight = [&](int i, int d) {
        const double a = amps[static_cast<std::size_t>(i)];
        if (d == 0) return 1.0 + a * a / 2.0;
        return (d == 2 || d == -2) ? a * a / 4.0 : a;
    };
    const double second = paired_mass(residue_table(0, 8, {-2, -1, 0, 1, 2}, sq_weight),
                                      residue_table(8, 16, {-2, -1, 0, 1, 2}, sq_weight));
    const double closed = closed_form_mean_sq(amps);
    const double alias_bound = second - closed;
    CHECK(alias_bound > 0.0);
    CHECK(alias_bound < 1e-4);

    // Streaming-grid moments on the prime grid agree with the algebra.
    const auto m = CosineProductGrid(freqs, amps, p).moments();
    CHECK(std::fabs(m.mean - 1.0) <= 1e-9);
    CHECK(std::fabs(m.mean_sq - closed) <= alias_bound + 1e-9);
}

TEST_CASE("streaming grid values match direct evaluation") {
    const RieszProduct rp = make_rp(3, AmplitudeSchedule::scaled(0.7));
    const std::int64_t n = 16 * 64;
    const CosineProductGrid grid(rp.frequencies(), rp.amplitudes(), n);
    std::vector<double> chunk(7);
    grid.fill(500, 507, chunk.data());
    for (int t = 0; t < 7; ++t) {
        const double x = (500 + t + 0.5) / static_cast<double>(n);
        CHECK(chunk[static_cast<std::size_t>(t)] == doctest::Approx(rp.eval(x)).epsilon(1e-12));
    }
    const auto all = grid.values();
    CHECK(all.size() == static_cast<std::size_t>(n));
    // Phases restart exactly at each requested range start, so offset ranges
    // agree to rotation-drift accuracy, and identical calls agree bitwise.
    CHECK(all[503] == doctest::Approx(chunk[3]).epsilon(1e-12));
    CHECK(grid.values()[503] == all[503]);
}
