#include "emlab/weights.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "emlab/errors.hpp"
#include "emlab/grid_sampler.hpp"
#include "emlab/numeric.hpp"

namespace emlab {

void validate_weight(const WeightSample& w) {
    if (!(w.left < w.right)) throw std::invalid_argument("WeightSample: left must be < right");
    const std::size_t n = w.values.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("WeightSample: cell count must be a positive power of two");
    }
    bool any_positive = false;
    for (double v : w.values) {
        if (!(v >= 0.0)) throw std::invalid_argument("WeightSample: values must be nonnegative");
        if (v > 0.0) any_positive = true;
    }
    if (!any_positive) throw std::invalid_argument("WeightSample: weight is identically zero");
}

WeightSample weight_from_riesz(const RieszProduct& rp, std::int64_t n_cells,
                               ResolutionPolicy policy) {
    if (n_cells < 1 || (n_cells & (n_cells - 1)) != 0) {
        throw std::invalid_argument("weight_from_riesz: cell count must be a power of two");
    }
    if (policy == ResolutionPolicy::Strict) {
        const std::int64_t minimal = 16 * rp.pair().h_at(rp.order());
        if (n_cells < minimal) {
            std::ostringstream os;
            os << "weight_from_riesz: " << n_cells << " cells under-resolve h_" << rp.order()
               << " (need >= " << minimal << ")";
            throw ResolutionError(os.str());
        }
    }
    WeightSample w;
    w.left = 0.0;
    w.right = 1.0;
    w.values = CosineProductGrid(rp.frequencies(), rp.amplitudes(), n_cells).values();
    return w;
}

IntervalFamily IntervalFamily::dyadic(std::size_t n_cells, int max_depth) {
    if (n_cells == 0 || (n_cells & (n_cells - 1)) != 0) {
        throw std::invalid_argument("IntervalFamily: cell count must be a power of two");
    }
    if (max_depth < 0) throw std::invalid_argument("IntervalFamily: depth must be >= 0");
    if ((n_cells >> max_depth) == 0) {
        throw std::invalid_argument("IntervalFamily: depth exceeds grid refinement");
    }
    IntervalFamily fam;
    fam.max_depth_ = max_depth;
    fam.n_cells_ = n_cells;
    for (int t = 0; t <= max_depth; ++t) {
        const std::size_t count = std::size_t{1} << t;
        const std::size_t width = n_cells / count;
        for (std::size_t p = 0; p < count; ++p) {
            fam.members_.push_back({p * width, (p + 1) * width, t, p});
        }
    }
    return fam;
}

std::string IntervalFamily::describe(const Member& m) {
    std::ostringstream os;
    os << "member depth " << m.depth << " pos " << m.pos << " cells [" << m.begin << ", " << m.end
       << ")";
    return os.str();
}

namespace {

// Aligned segment sums by repeated pairwise halving: rounding grows like
// log2(segment), not segment length. row(w) holds sums of width-2^w blocks.
class SegmentSums {
public:
    explicit SegmentSums(std::vector<double> cells) {
        rows_.push_back(std::move(cells));
        while (rows_.back().size() > 1) rows_.push_back(pairwise_halve(rows_.back()));
    }

    // Sum over cells [m.begin, m.end) where the range is one dyadic block.
    double block_sum(const IntervalFamily::Member& m) const {
        std::size_t width = m.end - m.begin;
        std::size_t level = 0;
        while ((std::size_t{1} << level) < width) ++level;
        return rows_[level][m.pos];
    }

private:
    std::vector<std::vector<double>> rows_;
};

double member_average(const SegmentSums& sums, const IntervalFamily::Member& m) {
    return sums.block_sum(m) / static_cast<double>(m.end - m.begin);
}

}  // namespace

double rh_constant(const WeightSample& w, double q, const IntervalFamily& fam) {
    validate_weight(w);
    if (!(q > 1.0)) throw std::invalid_argument("rh_constant: q must be > 1");
    if (fam.n_cells() != w.values.size()) {
        throw std::invalid_argument("rh_constant: family built for a different grid");
    }
    std::vector<double> powers(w.values.size());
    if (q == 2.0) {
        for (std::size_t i = 0; i < powers.size(); ++i) powers[i] = w.values[i] * w.values[i];
    } else {
        for (std::size_t i = 0; i < powers.size(); ++i) powers[i] = std::pow(w.values[i], q);
    }
    const SegmentSums sums(w.values);
    const SegmentSums pow_sums(std::move(powers));
    double best = 0.0;
    for (const auto& m : fam.members()) {
        const double mean = member_average(sums, m);
        if (!(mean > 0.0)) {
            throw std::domain_error("rh_constant: zero average on " + IntervalFamily::describe(m));
        }
        const double mean_q = member_average(pow_sums, m);
        const double value = std::pow(mean_q, 1.0 / q) / mean;
        if (value > best) best = value;
    }
    return best;
}

double a_inf_constant(const WeightSample& w, const IntervalFamily& fam) {
    validate_weight(w);
    if (fam.n_cells() != w.values.size()) {
        throw std::invalid_argument("a_inf_constant: family built for a different grid");
    }
    std::vector<double> logs(w.values.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
        if (!(w.values[i] > 0.0)) {
            throw std::invalid_argument("a_inf_constant: weight must be strictly positive (log)");
        }
        logs[i] = std::log(w.values[i]);
    }
    const SegmentSums sums(w.values);
    const SegmentSums log_sums(std::move(logs));
    double best = 0.0;
    for (const auto& m : fam.members()) {
        const double mean = member_average(sums, m);
        const double mean_log = member_average(log_sums, m);
        const double value = mean * std::exp(-mean_log);
        if (value > best) best = value;
    }
    return best;
}

double luxemburg_norm(const double* values, std::size_t count) {
    if (count == 0) throw std::invalid_argument("luxemburg_norm: empty member");
    // G(lambda) = avg Phi(v/lambda) with Phi(t) = t log(e + t): continuous,
    // strictly decreasing to 0 in lambda wherever some v > 0.
    auto big_g = [&](double lambda) {
        KahanSum s;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = values[i] / lambda;
            s.add(t * std::log(std::numbers::e + t));
        }
        return s.value() / static_cast<double>(count);
    };
    KahanSum mean_sum;
    for (std::size_t i = 0; i < count; ++i) mean_sum.add(values[i]);
    const double mean = mean_sum.value() / static_cast<double>(count);
    if (!(mean > 0.0)) throw std::domain_error("luxemburg_norm: member has zero average");
    // Bracket the root of G(lambda) = 1. Phi(t) >= t forces lambda* >= mean;
    // doubling from there terminates by monotonicity.
    double lo = mean;
    while (big_g(lo) < 1.0) lo *= 0.5;  // safety (cannot trigger for Phi >= t)
    // Phi(v/lambda) <= 1 once lambda is a small multiple of max(v), so the
    // doubling stops after a handful of steps.
    double hi = lo;
    while (big_g(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (big_g(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double llogl_constant(const WeightSample& w, const IntervalFamily& fam) {
    validate_weight(w);
    if (fam.n_cells() != w.values.size()) {
        throw std::invalid_argument("llogl_constant: family built for a different grid");
    }
    const SegmentSums sums(w.values);
    double best = 0.0;
    for (const auto& m : fam.members()) {
        const double mean = member_average(sums, m);
        if (!(mean > 0.0)) {
            throw std::domain_error("llogl_constant: zero average on " +
                                    IntervalFamily::describe(m));
        }
        const double norm = luxemburg_norm(w.values.data() + m.begin, m.end - m.begin);
        const double value = norm / mean;
        if (value > best) best = value;
    }
    return best;
}

WeightConstants weight_constants(const WeightSample& w, const IntervalFamily& fam,
                                 const std::vector<double>& qs) {
    WeightConstants out;
    for (double q : qs) out.rh_q[q] = rh_constant(w, q, fam);
    out.a_inf = a_inf_constant(w, fam);
    out.llogl = llogl_constant(w, fam);
    return out;
}

}  // namespace emlab
