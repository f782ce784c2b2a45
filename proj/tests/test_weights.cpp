#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "emlab/errors.hpp"
#include "emlab/lacunary.hpp"
#include "emlab/numeric.hpp"
#include "emlab/weights.hpp"

using namespace emlab;

namespace {

WeightSample sample_of(std::vector<double> values) {
    WeightSample w;
    w.values = std::move(values);
    return w;
}

// Independent Luxemburg-norm oracle: Newton iteration on
// G(lambda) = avg (v/lambda) log(e + v/lambda) = 1, written against the same
// Young function but with none of the library's bracketing code.
double luxemburg_oracle(const std::vector<double>& v) {
    double lam = 0.0;
    for (double x : v) lam = std::max(lam, x);
    lam = std::max(lam, 1e-300);
    for (int it = 0; it < 200; ++it) {
        double g = 0.0, dg = 0.0;
        for (double x : v) {
            const double t = x / lam;
            const double l = std::log(std::numbers::e + t);
            g += t * l;
            // d/dlam [t log(e+t)] = -(t/lam) (log(e+t) + t/(e+t))
            dg += -(t / lam) * (l + t / (std::numbers::e + t));
        }
        g = g / static_cast<double>(v.size()) - 1.0;
        dg /= static_cast<double>(v.size());
        const double step = g / dg;
        lam -= step;
        if (std::fabs(step) < 1e-14 * lam) break;
    }
    return lam;
}

}  // namespace

TEST_CASE("weight validation") {
    CHECK_THROWS_AS(validate_weight(sample_of({1.0, 2.0, 3.0})), std::invalid_argument);
    CHECK_THROWS_AS(validate_weight(sample_of({1.0, -0.5})), std::invalid_argument);
    CHECK_THROWS_AS(validate_weight(sample_of({0.0, 0.0})), std::invalid_argument);
    CHECK_NOTHROW(validate_weight(sample_of({0.0, 2.0})));
}

TEST_CASE("dyadic interval family shape") {
    const IntervalFamily fam = IntervalFamily::dyadic(16, 3);
    CHECK(fam.members().size() == 15);  // 1 + 2 + 4 + 8
    CHECK(fam.members().front().begin == 0);
    CHECK(fam.members().front().end == 16);
    const auto& last = fam.members().back();
    CHECK(last.depth == 3);
    CHECK(last.begin == 14);
    CHECK(last.end == 16);
    CHECK_THROWS_AS(IntervalFamily::dyadic(12, 2), std::invalid_argument);
    CHECK_THROWS_AS(IntervalFamily::dyadic(8, 4), std::invalid_argument);
    CHECK_FALSE(IntervalFamily::describe(last).empty());
}

TEST_CASE("constant weight has unit reverse Holder and A_inf constants") {
    const WeightSample w = sample_of(std::vector<double>(64, 1.0));
    const IntervalFamily fam = IntervalFamily::dyadic(64, 3);
    for (double q : {1.5, 2.0, 3.0, 4.0}) {
        CHECK(rh_constant(w, q, fam) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(a_inf_constant(w, fam) == doctest::Approx(1.0).epsilon(1e-14));
    // The L log L constant of the unit weight is 1/t* with t* log(e + t*) = 1,
    // not 1: Phi(1) = log(e + 1) > 1 forces a norm above the mean.
    const double t_star = 0.7957028110823632;
    CHECK(t_star * std::log(std::numbers::e + t_star) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(llogl_constant(w, fam) == doctest::Approx(1.0 / t_star).epsilon(1e-9));
}

TEST_CASE("two-step weight constants against closed forms") {
    const WeightSample w = sample_of({1.0, 3.0});
    const IntervalFamily fam = IntervalFamily::dyadic(2, 0);
    // avg = 2, avg of squares = 5, geometric mean = sqrt(3).
    CHECK(rh_constant(w, 2.0, fam) == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-14));
    CHECK(rh_constant(w, 4.0, fam) ==
          doctest::Approx(std::pow(41.0, 0.25) / 2.0).epsilon(1e-14));
    CHECK(a_inf_constant(w, fam) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
    const double lam = luxemburg_oracle({1.0, 3.0});
    CHECK(luxemburg_norm(w.values.data(), 2) == doctest::Approx(lam).epsilon(1e-9));
    CHECK(llogl_constant(w, fam) == doctest::Approx(lam / 2.0).epsilon(1e-9));
}

TEST_CASE("constants are scale invariant") {
    const WeightSample w = sample_of({0.5, 1.25, 2.0, 0.25});
    WeightSample w3 = w;
    for (double& v : w3.values) v *= 3.0;
    const IntervalFamily fam = IntervalFamily::dyadic(4, 2);
    CHECK(rh_constant(w3, 2.0, fam) == doctest::Approx(rh_constant(w, 2.0, fam)).epsilon(1e-12));
    CHECK(a_inf_constant(w3, fam) == doctest::Approx(a_inf_constant(w, fam)).epsilon(1e-12));
    CHECK(llogl_constant(w3, fam) == doctest::Approx(llogl_constant(w, fam)).epsilon(1e-8));
}

TEST_CASE("sampling a product as a weight") {
    const LacunaryPair pair = make_lacunary(3, LacunaryVariant::Standard);
    const RieszProduct rp(pair, AmplitudeSchedule::scaled(0.9), 3);
    CHECK_THROWS_AS(weight_from_riesz(rp, 512), ResolutionError);      // < 16 h_3
    CHECK_THROWS_AS(weight_from_riesz(rp, 1500), std::invalid_argument);  // not a power of two
    const WeightSample w = weight_from_riesz(rp, 2048);
    CHECK(w.values.size() == 2048);
    KahanSum mean;
    for (double v : w.values) {
        CHECK(v > 0.0);
        mean.add(v);
    }
    CHECK(mean.value() / 2048.0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("full-interval reverse Holder of a product matches Parseval") {
    for (int j : {1, 2, 3, 4, 5}) {
        const LacunaryPair pair = make_lacunary(j, LacunaryVariant::Standard);
        const RieszProduct rp(pair, AmplitudeSchedule::sqrt_schedule(), j);
        const WeightSample w = weight_from_riesz(rp, 16 * pair.h_at(j));
        const IntervalFamily whole = IntervalFamily::dyadic(w.values.size(), 0);
        CHECK(rh_constant(w, 2.0, whole) ==
              doctest::Approx(riesz_l2_closed_form(rp)).epsilon(1e-8));
    }
}

TEST_CASE("constants grow with family depth and exponent") {
    const LacunaryPair pair = make_lacunary(4, LacunaryVariant::Standard);
    const RieszProduct rp(pair, AmplitudeSchedule::scaled(0.9), 4);
    const WeightSample w = weight_from_riesz(rp, 4096);
    const IntervalFamily d0 = IntervalFamily::dyadic(4096, 0);
    const IntervalFamily d2 = IntervalFamily::dyadic(4096, 2);
    const IntervalFamily d4 = IntervalFamily::dyadic(4096, 4);
    // Deeper families maximize over supersets.
    CHECK(rh_constant(w, 2.0, d0) <= rh_constant(w, 2.0, d2));
    CHECK(rh_constant(w, 2.0, d2) <= rh_constant(w, 2.0, d4));
    CHECK(a_inf_constant(w, d2) <= a_inf_constant(w, d4));
    CHECK(llogl_constant(w, d2) <= llogl_constant(w, d4) + 1e-10);
    // Larger q is a stronger integrability demand (power-mean inequality).
    double prev = 1.0;
    for (double q : {1.5, 2.0, 3.0, 4.0}) {
        const double rh = rh_constant(w, q, d2);
        CHECK(rh >= prev - 1e-12);
        prev = rh;
    }
    // Everything degenerate stays >= 1 (Jensen).
    CHECK(rh_constant(w, 1.5, d4) >= 1.0);
    CHECK(a_inf_constant(w, d4) >= 1.0);
    CHECK(llogl_constant(w, d4) >= 1.0);
}

TEST_CASE("weight constants bundle") {
    const WeightSample w = sample_of({1.0, 3.0});
    const IntervalFamily fam = IntervalFamily::dyadic(2, 0);
    const WeightConstants wc = weight_constants(w, fam, {2.0, 4.0});
    CHECK(wc.rh_q.size() == 2);
    CHECK(wc.rh_q.at(2.0) == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-14));
    CHECK(wc.a_inf == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(wc.llogl > 1.0);
    CHECK_THROWS_AS(rh_constant(w, 2.0, IntervalFamily::dyadic(4, 0)), std::invalid_argument);
    CHECK_THROWS_AS(rh_constant(w, 1.0, fam), std::invalid_argument);
    CHECK_THROWS_AS(a_inf_constant(sample_of({0.0, 1.0}), fam), std::invalid_argument);
}
