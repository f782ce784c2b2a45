#pragma once

// Finite cosine products R_j(x) = prod_{i<=j} (1 + a_i cos(2 pi h_i x)) over a
// lacunary pair: exact sparse Fourier expansions, L^p norms by exact algebra
// or midpoint quadrature, the primitive F_j, and mass-concentration
// diagnostics of the sampled distribution.

#include <cstdint>
#include <utility>
#include <vector>

#include "emlab/field.hpp"
#include "emlab/lacunary.hpp"
#include "emlab/schedule.hpp"

namespace emlab {

class RieszProduct {
public:
    // Validates the pair (growth inequalities) and 1 <= order <= pair length.
    RieszProduct(LacunaryPair pair, AmplitudeSchedule schedule, int order);

    double eval(double x) const;  // strictly positive; period 1

    int order() const { return order_; }
    const LacunaryPair& pair() const { return pair_; }
    const AmplitudeSchedule& schedule() const { return schedule_; }
    double amplitude(int i) const { return schedule_.amplitude(i); }

    std::vector<std::int64_t> frequencies() const;  // h_1..h_order
    std::vector<double> amplitudes() const;         // a_1..a_order

private:
    LacunaryPair pair_;
    AmplitudeSchedule schedule_;
    int order_;
};

// Sparse symmetric frequency -> coefficient table in the exponential
// convention: f(x) = sum over signed frequencies of c_lambda e^{2 pi i lambda x},
// with c_{-lambda} = c_lambda real. Exactly-zero coefficients are dropped, so
// a product of order j with positive amplitudes holds 3^j entries.
class FourierExpansion {
public:
    explicit FourierExpansion(std::vector<std::pair<std::int64_t, double>> terms);

    double coefficient(std::int64_t freq) const;  // 0 when absent
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<std::pair<std::int64_t, double>>& terms() const { return terms_; }
    std::int64_t max_frequency() const;

private:
    std::vector<std::pair<std::int64_t, double>> terms_;  // sorted by frequency
};

// Default term budget: 3^16 (~43M entries, ~0.7 GB). Orders past that raise
// ResourceLimitError before any allocation.
inline constexpr std::int64_t kExpansionTermBudget = 43046721;

FourierExpansion riesz_fourier(const RieszProduct& rp,
                               std::int64_t term_budget = kExpansionTermBudget);

// Integral over one period: the frequency-0 coefficient. Exactly 1 for any
// validated pair (no nonzero signed sum of the h_i vanishes).
double riesz_l1(const RieszProduct& rp);
// Independent route: composite midpoint quadrature; n_points = 0 picks the
// minimal legal grid 16*h_order. Violating the resolution rule is an error.
double riesz_l1_quadrature(const RieszProduct& rp, std::int64_t n_points = 0);

double riesz_l2(const RieszProduct& rp);              // Parseval over the expansion
double riesz_l2_closed_form(const RieszProduct& rp);  // sqrt(prod(1 + a_i^2/2))
double riesz_lp(const RieszProduct& rp, double p, std::int64_t n_points = 0);

// F_j(x) = integral of R_j over [0, x], by term-wise exact antiderivatives.
double riesz_cdf(const RieszProduct& rp, double x);

struct SingularityDiagnostics {
    int order = 0;
    double mean = 0.0;
    double median = 0.0;
    // (requested mass fraction p, smallest Lebesgue fraction carrying >= p).
    std::vector<std::pair<double, double>> mass_support;

    double mass_support_fraction(double p) const;
};

enum class ResolutionPolicy {
    Strict,      // grid_size >= 16*h_order, the default contract
    Subsampled,  // trend diagnostics beyond Nyquist reach; grid_size >= 2^16
};

// Grid evaluation is capped at 2^25 samples (sortable in-memory); larger
// requests raise ResourceLimitError.
inline constexpr std::int64_t kDiagnosticsSampleCap = 1 << 25;

// Odd prime used by the deep-order (j = 16) subsampled diagnostics: no
// nonzero first-order signed frequency sum of the minimal standard pair is
// divisible by it, so the subsampled mean carries no aliasing error at all
// (verified by test via meet-in-the-middle residue search).
inline constexpr std::int64_t kSubsampleDiagnosticGrid = 30000109;

SingularityDiagnostics singularity_diagnostics(const RieszProduct& rp, std::int64_t grid_size,
                                               const std::vector<double>& fractions,
                                               ResolutionPolicy policy = ResolutionPolicy::Strict);

}  // namespace emlab
