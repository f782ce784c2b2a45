#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "emlab/cutoff.hpp"
#include "emlab/det_random.hpp"
#include "emlab/field.hpp"
#include "emlab/lacunary.hpp"
#include "emlab/schedule.hpp"

using namespace emlab;

namespace {
constexpr double kA0 = 1.0 / (4.0 * std::numbers::pi);
}

TEST_CASE("amplitude laws") {
    const auto sq = AmplitudeSchedule::sqrt_schedule();
    const auto lin = AmplitudeSchedule::linear_schedule();
    const auto st = AmplitudeSchedule::scaled(0.9);

    CHECK(sq.amplitude(1) == doctest::Approx(kA0).epsilon(1e-15));
    CHECK(sq.amplitude(4) == doctest::Approx(kA0 / 2.0).epsilon(1e-15));
    CHECK(lin.amplitude(2) == doctest::Approx(kA0 / 2.0).epsilon(1e-15));
    CHECK(st.amplitude(9) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(AmplitudeSchedule::zero().amplitude(5) == 0.0);

    for (const auto& s : {sq, lin, st}) {
        for (int j = 1; j < 20; ++j) CHECK(s.amplitude(j + 1) < s.amplitude(j));
        CHECK(s.amplitude(1) < 1.0);
    }

    CHECK(sq.sqrt_form_scale() == doctest::Approx(kA0).epsilon(1e-15));
    CHECK(st.sqrt_form_scale() == 0.9);
    CHECK_THROWS_AS(lin.sqrt_form_scale(), std::invalid_argument);
    CHECK_THROWS_AS(sq.amplitude(0), std::invalid_argument);
    CHECK_THROWS_AS(AmplitudeSchedule::scaled(1.0), std::invalid_argument);
    CHECK_THROWS_AS(AmplitudeSchedule::scaled(-0.1), std::invalid_argument);

    CHECK(sq.name() == "sqrt");
    CHECK(lin.name() == "linear");
    CHECK(st.name().rfind("scaled:", 0) == 0);
}

TEST_CASE("cutoff plateau, symmetry, midpoint, and derivative") {
    CHECK(cutoff_eval(0.0) == 1.0);
    CHECK(cutoff_eval(0.7) == 1.0);
    CHECK(cutoff_eval(1.0) == 1.0);
    CHECK(cutoff_eval(2.0) == 0.0);
    CHECK(cutoff_eval(3.5) == 0.0);
    CHECK(cutoff_eval(1.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cutoff_eval(-1.3) == cutoff_eval(1.3));

    double prev = 1.0;
    for (int i = 1; i <= 40; ++i) {
        const double v = cutoff_eval(1.0 + 0.025 * i);
        CHECK(v <= prev);
        prev = v;
    }

    CHECK(cutoff_derivative(0.8) == 0.0);
    CHECK(cutoff_derivative(2.2) == 0.0);
    for (double t : {1.2, 1.5, 1.85}) {
        const double h = 1e-6;
        const double fd = (cutoff_eval(t + h) - cutoff_eval(t - h)) / (2.0 * h);
        CHECK(cutoff_derivative(t) == doctest::Approx(fd).epsilon(1e-7));
        CHECK(cutoff_derivative(-t) == -cutoff_derivative(t));
    }
}

TEST_CASE("layer formula and truncation agreement") {
    const LacunaryPair pair = make_lacunary(3, LacunaryVariant::Standard);
    const auto sched = AmplitudeSchedule::sqrt_schedule();
    const CoefficientField lim = CoefficientField::limit(pair, sched);
    const CoefficientField lv2 = CoefficientField::level(pair, sched, 2);

    // phi_2 at x = 1/8: cos(2 pi * 16 / 8) = 1.
    CHECK(lim.phi(2, 0.125) == doctest::Approx(1.0 + sched.amplitude(2)).epsilon(1e-15));
    // Top layer wherever |y| >= 1/k_1 = 1/2.
    CHECK(lim.eval(0.3, 0.75) == lim.phi(1, 0.3));
    CHECK(lim.eval(0.3, -2.0) == lim.phi(1, 0.3));
    // Limit field pins the boundary line to 1.
    CHECK(lim.eval(0.42, 0.0) == 1.0);
    // Level(2) freezes at phi_2 below 1/k_2 = 1/4.
    CHECK(lv2.eval(0.84, 0.01) == lv2.phi(2, 0.84));
    // Above the truncation height Level and Limit share the evaluation path.
    SplitMix64 rng(7);
    for (int t = 0; t < 200; ++t) {
        const double x = rng.next_double();
        const double y = 0.25 + 0.75 * rng.next_double();
        CHECK(lv2.eval(x, y) == lim.eval(x, y));
    }
    CHECK(lim.is_limit());
    CHECK_FALSE(lv2.is_limit());
    CHECK(lv2.level_index() == 2);
}

TEST_CASE("field range stays within the first amplitude") {
    const LacunaryPair pair = make_lacunary(4, LacunaryVariant::Standard);
    const auto sched = AmplitudeSchedule::scaled(0.55);
    const CoefficientField lim = CoefficientField::limit(pair, sched);
    const double a1 = sched.amplitude(1);
    SplitMix64 rng(11);
    for (int t = 0; t < 2000; ++t) {
        const double v = lim.eval(rng.next_double(), rng.next_double());
        CHECK(v >= 1.0 - a1 - 1e-12);
        CHECK(v <= 1.0 + a1 + 1e-12);
    }
}

TEST_CASE("analytic gradient matches central differences") {
    const LacunaryPair pair = make_lacunary(3, LacunaryVariant::Standard);
    const CoefficientField lim =
        CoefficientField::limit(pair, AmplitudeSchedule::sqrt_schedule());
    SplitMix64 rng(19);
    const double h = 1e-6;
    for (int t = 0; t < 60; ++t) {
        const double x = rng.next_double();
        const double y = 0.02 + 0.96 * rng.next_double();
        const Gradient2 g = lim.gradient(x, y);
        const double fx = (lim.eval(x + h, y) - lim.eval(x - h, y)) / (2.0 * h);
        const double fy = (lim.eval(x, y + h) - lim.eval(x, y - h)) / (2.0 * h);
        CHECK(g.dx == doctest::Approx(fx).epsilon(1e-5).scale(1.0));
        CHECK(g.dy == doctest::Approx(fy).epsilon(1e-5).scale(1.0));
    }
    CHECK_THROWS_AS(lim.gradient(0.5, 0.0), std::domain_error);
}

TEST_CASE("gradient is exactly linear in the global amplitude scale") {
    const LacunaryPair pair = make_lacunary(3, LacunaryVariant::Standard);
    const CoefficientField f1 =
        CoefficientField::limit(pair, AmplitudeSchedule::scaled(0.2));
    const CoefficientField f2 =
        CoefficientField::limit(pair, AmplitudeSchedule::scaled(0.4));
    // Pure layer: the x-derivative carries the amplitude as a bare factor,
    // so doubling the scale doubles it bitwise.
    const Gradient2 a1 = f1.gradient(0.37, 0.8);
    const Gradient2 a2 = f2.gradient(0.37, 0.8);
    CHECK(a2.dx == 2.0 * a1.dx);
    CHECK(a1.dy == 0.0);
    CHECK(a2.dy == 0.0);
    // Blend band: the vertical component subtracts two rounded phi values, so
    // the doubling is exact only to rounding.
    const Gradient2 b1 = f1.gradient(0.37, 0.3);
    const Gradient2 b2 = f2.gradient(0.37, 0.3);
    CHECK(b2.dx == doctest::Approx(2.0 * b1.dx).epsilon(1e-12));
    CHECK(b2.dy == doctest::Approx(2.0 * b1.dy).epsilon(1e-12));
}

TEST_CASE("resolution drivers") {
    const LacunaryPair pair = make_lacunary(3, LacunaryVariant::Standard);
    const auto sched = AmplitudeSchedule::sqrt_schedule();
    const CoefficientField lim = CoefficientField::limit(pair, sched);
    const CoefficientField lv2 = CoefficientField::level(pair, sched, 2);
    const CoefficientField lv3 = CoefficientField::level(pair, sched, 3);
    CHECK(lim.top_frequency() == 64);
    CHECK(lv2.top_frequency() == 16);
    CHECK(lv2.next_layer_scale() == 8);        // k_3
    CHECK(lv3.next_layer_scale() == 16);       // 2 k_3 past the end of the pair
    CHECK(lim.next_layer_scale() == 16);
    CHECK_THROWS_AS(CoefficientField::level(pair, sched, 4), std::invalid_argument);
    CHECK_THROWS_AS(CoefficientField::level(pair, sched, 0), std::invalid_argument);
    CHECK_THROWS_AS(lim.phi(4, 0.1), std::invalid_argument);
}
