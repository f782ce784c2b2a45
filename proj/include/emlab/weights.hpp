#pragma once

// Quantitative absolute-continuity constants of sampled nonnegative weights
// over dyadic interval families: reverse Hölder RH_q, the A_infinity constant
// mean(w) * exp(mean(log 1/w)), and the L log L constant via Luxemburg norms
// with Young function Phi(t) = t log(e + t). All integrals are exact sums
// over the piecewise-constant cell values.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emlab/riesz.hpp"

namespace emlab {

struct WeightSample {
    double left = 0.0;
    double right = 1.0;
    std::vector<double> values;  // cell averages; power-of-two length
};

// Throws invalid_argument unless: power-of-two cell count, all values >= 0,
// at least one value > 0, left < right.
void validate_weight(const WeightSample& w);

// Samples R_j at cell midpoints as a piecewise-constant density on [0, 1].
// Strict policy enforces n_cells >= 16*h_j.
WeightSample weight_from_riesz(const RieszProduct& rp, std::int64_t n_cells,
                               ResolutionPolicy policy = ResolutionPolicy::Strict);

// All dyadic subintervals of the base interval down to max_depth, as aligned
// cell ranges. Member count = 2^(depth+1) - 1.
class IntervalFamily {
public:
    struct Member {
        std::size_t begin, end;  // cell range [begin, end)
        int depth;
        std::size_t pos;  // position within its depth row
    };

    static IntervalFamily dyadic(std::size_t n_cells, int max_depth);

    const std::vector<Member>& members() const { return members_; }
    int max_depth() const { return max_depth_; }
    std::size_t n_cells() const { return n_cells_; }

    static std::string describe(const Member& m);

private:
    std::vector<Member> members_;
    int max_depth_ = 0;
    std::size_t n_cells_ = 0;
};

// max over members of (avg w^q)^(1/q) / (avg w). q > 1.
double rh_constant(const WeightSample& w, double q, const IntervalFamily& fam);

// max over members of (avg w) * exp(avg log(1/w)). Requires w > 0 on all cells.
double a_inf_constant(const WeightSample& w, const IntervalFamily& fam);

// max over members of (Luxemburg norm of w on the member under normalized
// counting measure) / (avg w), Young function Phi(t) = t log(e + t),
// bisection to relative tolerance 1e-10.
double llogl_constant(const WeightSample& w, const IntervalFamily& fam);

// Luxemburg norm of a bare cell array under normalized counting measure.
double luxemburg_norm(const double* values, std::size_t count);

struct WeightConstants {
    std::map<double, double> rh_q;
    double a_inf = 0.0;
    double llogl = 0.0;
};

WeightConstants weight_constants(const WeightSample& w, const IntervalFamily& fam,
                                 const std::vector<double>& qs);

}  // namespace emlab
