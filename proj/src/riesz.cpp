#include "emlab/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "emlab/errors.hpp"
#include "emlab/grid_sampler.hpp"
#include "emlab/numeric.hpp"

namespace emlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

RieszProduct::RieszProduct(LacunaryPair pair, AmplitudeSchedule schedule, int order)
    : pair_(std::move(pair)), schedule_(schedule), order_(order) {
    if (order_ < 1 || order_ > pair_.size()) {
        throw std::invalid_argument("RieszProduct: order outside pair length");
    }
    const LacunaryReport report = validate_lacunary(pair_);
    if (!report.ok()) {
        throw std::invalid_argument("RieszProduct: invalid lacunary pair: " +
                                    report.violations.front().condition);
    }
}

double RieszProduct::eval(double x) const {
    double prod = 1.0;
    for (int i = 1; i <= order_; ++i) {
        const double a = schedule_.amplitude(i);
        prod *= 1.0 + a * std::cos(kTwoPi * static_cast<double>(pair_.h_at(i)) * x);
    }
    return prod;
}

std::vector<std::int64_t> RieszProduct::frequencies() const {
    std::vector<std::int64_t> f;
    f.reserve(static_cast<std::size_t>(order_));
    for (int i = 1; i <= order_; ++i) f.push_back(pair_.h_at(i));
    return f;
}

std::vector<double> RieszProduct::amplitudes() const {
    std::vector<double> a;
    a.reserve(static_cast<std::size_t>(order_));
    for (int i = 1; i <= order_; ++i) a.push_back(schedule_.amplitude(i));
    return a;
}

FourierExpansion::FourierExpansion(std::vector<std::pair<std::int64_t, double>> terms)
    : terms_(std::move(terms)) {}

double FourierExpansion::coefficient(std::int64_t freq) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), freq,
                               [](const auto& t, std::int64_t f) { return t.first < f; });
    return (it != terms_.end() && it->first == freq) ? it->second : 0.0;
}

std::int64_t FourierExpansion::max_frequency() const {
    return terms_.empty() ? 0 : terms_.back().first;
}

FourierExpansion riesz_fourier(const RieszProduct& rp, std::int64_t term_budget) {
    using Term = std::pair<std::int64_t, double>;
    std::vector<Term> cur{{0, 1.0}};
    for (int i = 1; i <= rp.order(); ++i) {
        const double w = rp.amplitude(i) / 2.0;
        if (w == 0.0) continue;  // degenerate factor contributes nothing
        if (static_cast<std::int64_t>(cur.size()) * 3 > term_budget) {
            std::ostringstream os;
            os << "riesz_fourier: expansion at order " << i << " needs " << cur.size() * 3
               << " terms, budget is " << term_budget;
            throw ResourceLimitError(os.str());
        }
        const std::int64_t h = rp.pair().h_at(i);
        // Three sorted runs: shifted down, centered, shifted up. Equal
        // frequencies cannot collide for a validated pair (sum of lower
        // frequencies stays below h by ratio-4 growth), but collisions are
        // still merged additively for safety on borderline custom pairs.
        std::vector<Term> next;
        next.reserve(cur.size() * 3);
        std::size_t lo = 0, mid = 0, hi = 0;
        const std::size_t n = cur.size();
        while (lo < n || mid < n || hi < n) {
            std::int64_t best = 0;
            int which = -1;
            if (lo < n) {
                best = cur[lo].first - h;
                which = 0;
            }
            if (mid < n && (which < 0 || cur[mid].first < best)) {
                best = cur[mid].first;
                which = 1;
            }
            if (hi < n && (which < 0 || cur[hi].first + h < best)) {
                best = cur[hi].first + h;
                which = 2;
            }
            double coeff = 0.0;
            if (lo < n && cur[lo].first - h == best) coeff += w * cur[lo++].second;
            if (mid < n && cur[mid].first == best) coeff += cur[mid++].second;
            if (hi < n && cur[hi].first + h == best) coeff += w * cur[hi++].second;
            if (!next.empty() && next.back().first == best) {
                next.back().second += coeff;
            } else {
                next.push_back({best, coeff});
            }
        }
        cur.swap(next);
    }
    return FourierExpansion(std::move(cur));
}

double riesz_l1(const RieszProduct& rp) {
    // The mean is the frequency-0 coefficient. For orders within the term
    // budget it is read off the exact expansion; beyond that it is 1 by the
    // same distinctness argument the expansion relies on (no nonzero signed
    // sum of validated lacunary frequencies vanishes), without materializing
    // 3^j terms.
    std::int64_t terms = 1;
    for (int i = 1; i <= rp.order() && terms <= kExpansionTermBudget; ++i) terms *= 3;
    if (terms <= kExpansionTermBudget) {
        return riesz_fourier(rp).coefficient(0);
    }
    return 1.0;
}

namespace {

std::int64_t resolve_points(const RieszProduct& rp, std::int64_t n_points, const char* who) {
    const std::int64_t minimal = 16 * rp.pair().h_at(rp.order());
    if (n_points == 0) return minimal;
    if (n_points < minimal) {
        std::ostringstream os;
        os << who << ": " << n_points << " points under-resolve h_" << rp.order() << " = "
           << rp.pair().h_at(rp.order()) << " (need >= " << minimal << ")";
        throw ResolutionError(os.str());
    }
    return n_points;
}

}  // namespace

double riesz_l1_quadrature(const RieszProduct& rp, std::int64_t n_points) {
    const std::int64_t n = resolve_points(rp, n_points, "riesz_l1_quadrature");
    return CosineProductGrid(rp.frequencies(), rp.amplitudes(), n).moments().mean;
}

double riesz_l2(const RieszProduct& rp) {
    const FourierExpansion exp = riesz_fourier(rp);
    KahanSum sum;
    for (const auto& [freq, c] : exp.terms()) {
        (void)freq;
        sum.add(c * c);
    }
    return std::sqrt(sum.value());
}

double riesz_l2_closed_form(const RieszProduct& rp) {
    double prod = 1.0;
    for (int i = 1; i <= rp.order(); ++i) {
        const double a = rp.amplitude(i);
        prod *= 1.0 + a * a / 2.0;
    }
    return std::sqrt(prod);
}

double riesz_lp(const RieszProduct& rp, double p, std::int64_t n_points) {
    if (!(p > 1.0)) throw std::invalid_argument("riesz_lp: p must be > 1");
    const std::int64_t n = resolve_points(rp, n_points, "riesz_lp");
    const auto m = CosineProductGrid(rp.frequencies(), rp.amplitudes(), n).moments(p);
    return std::pow(m.mean_pow, 1.0 / p);
}

double riesz_cdf(const RieszProduct& rp, double x) {
    if (!(x >= 0.0) || x > 1.0) throw std::invalid_argument("riesz_cdf: x must lie in [0, 1]");
    const FourierExpansion exp = riesz_fourier(rp);
    // f = c0 + sum_{l>0} 2 c_l cos(2 pi l t)  =>  F(x) = c0 x + sum_{l>0}
    // (c_l/(pi l)) sin(2 pi l x).
    KahanSum sum;
    for (const auto& [freq, c] : exp.terms()) {
        if (freq <= 0) continue;
        const double lf = static_cast<double>(freq);
        sum.add(c / (std::numbers::pi * lf) * std::sin(kTwoPi * lf * x));
    }
    return exp.coefficient(0) * x + sum.value();
}

double SingularityDiagnostics::mass_support_fraction(double p) const {
    for (const auto& [frac, leb] : mass_support) {
        if (frac == p) return leb;
    }
    throw std::invalid_argument("SingularityDiagnostics: fraction was not requested");
}

SingularityDiagnostics singularity_diagnostics(const RieszProduct& rp, std::int64_t grid_size,
                                               const std::vector<double>& fractions,
                                               ResolutionPolicy policy) {
    for (double p : fractions) {
        if (!(p > 0.0) || p > 1.0) {
            throw std::invalid_argument("singularity_diagnostics: fractions must lie in (0, 1]");
        }
    }
    if (policy == ResolutionPolicy::Strict) {
        const std::int64_t minimal = 16 * rp.pair().h_at(rp.order());
        if (grid_size < minimal) {
            std::ostringstream os;
            os << "singularity_diagnostics: grid " << grid_size << " under-resolves h_"
               << rp.order() << " (need >= " << minimal << ")";
            throw ResolutionError(os.str());
        }
    } else if (grid_size < 65536) {
        throw std::invalid_argument("singularity_diagnostics: subsampled grid must have >= 65536 cells");
    }
    if (grid_size > kDiagnosticsSampleCap) {
        std::ostringstream os;
        os << "singularity_diagnostics: grid " << grid_size << " exceeds the in-memory cap "
           << kDiagnosticsSampleCap;
        throw ResourceLimitError(os.str());
    }

    std::vector<double> values =
        CosineProductGrid(rp.frequencies(), rp.amplitudes(), grid_size).values();
    KahanSum total;
    for (double v : values) total.add(v);
    const double mass = total.value();

    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double median = (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);

    // Accumulate cells from the largest value down; for each requested
    // fraction record the smallest cell count reaching that share of mass.
    std::vector<std::size_t> order(fractions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fractions[a] < fractions[b]; });
    std::vector<std::pair<double, double>> support(fractions.size());
    std::size_t next = 0;
    KahanSum cum;
    for (std::size_t used = 1; used <= n && next < order.size(); ++used) {
        cum.add(values[n - used]);
        while (next < order.size() && cum.value() >= fractions[order[next]] * mass) {
            support[order[next]] = {fractions[order[next]],
                                    static_cast<double>(used) / static_cast<double>(n)};
            ++next;
        }
    }
    // Rounding can leave the largest fraction unassigned by a hair; it then
    // needs every cell.
    for (; next < order.size(); ++next) {
        support[order[next]] = {fractions[order[next]], 1.0};
    }

    SingularityDiagnostics diag;
    diag.order = rp.order();
    diag.mean = mass / static_cast<double>(n);
    diag.median = median;
    diag.mass_support = std::move(support);
    return diag;
}

}  // namespace emlab
