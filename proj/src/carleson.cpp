#include "emlab/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "emlab/det_random.hpp"
#include "emlab/errors.hpp"
#include "emlab/numeric.hpp"
#include "emlab/parallel.hpp"

namespace emlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unit-disk offsets used for the inner sup. Every quadrature cell reuses the
// same prefix of the low-discrepancy sequence, so raising sup_samples only
// adds candidate points and the sampled sup is nondecreasing in it.
std::vector<std::pair<double, double>> disk_offsets(int count) {
    std::vector<std::pair<double, double>> off;
    off.reserve(static_cast<std::size_t>(count));
    R2Sequence seq;
    for (int s = 0; s < count; ++s) {
        double u = 0.0, v = 0.0;
        seq.point(u, v);
        const double su = std::sqrt(u);
        const double ang = kTwoPi * v;
        off.emplace_back(su * std::cos(ang), su * std::sin(ang));
    }
    return off;
}

double density_from_offsets(const CoefficientField& field, double x, double y,
                            const std::vector<std::pair<double, double>>& offsets) {
    const double half = 0.5 * y;
    double best = 0.0;
    for (const auto& [ox, oy] : offsets) {
        const double yx = x + half * ox;
        const double yy = y + half * oy;
        const Gradient2 g = field.gradient(yx, yy);
        best = std::max(best, (g.dx * g.dx + g.dy * g.dy) * yy);
    }
    return best;
}

int field_level(const CoefficientField& field) {
    return field.is_limit() ? field.pair().size() : field.level_index();
}

struct BallResult {
    double value = 0.0;
    std::int64_t cells = 0;
};

}  // namespace

void Region::validate() const {
    if (!(x0 < x1)) throw std::invalid_argument("Region: x0 < x1 required");
    if (!(y1 > 0.0)) throw std::invalid_argument("Region: y1 > 0 required");
}

double kp_local_density(const CoefficientField& field, double x, double y, int sup_samples) {
    if (!(y > 0.0)) throw std::invalid_argument("kp_local_density: y must be positive");
    if (sup_samples < 1) throw std::invalid_argument("kp_local_density: sup_samples must be >= 1");
    return density_from_offsets(field, x, y, disk_offsets(sup_samples));
}

KPEstimate kp_functional(const CoefficientField& field, const Region& region,
                         const KpSampling& sampling) {
    region.validate();
    if (sampling.ball_centers < 1) throw std::invalid_argument("kp_functional: ball_centers must be >= 1");
    if (sampling.y_rows < 1) throw std::invalid_argument("kp_functional: y_rows must be >= 1");
    if (sampling.sup_samples < 1) throw std::invalid_argument("kp_functional: sup_samples must be >= 1");
    if (sampling.quad_refine < 1) throw std::invalid_argument("kp_functional: quad_refine must be >= 1");
    if (!(sampling.max_radius > 0.0)) throw std::invalid_argument("kp_functional: max_radius must be positive");
    if (sampling.center_lo > sampling.center_hi) {
        throw std::invalid_argument("kp_functional: center_lo must not exceed center_hi");
    }
    if (sampling.center_lo < region.x0 || sampling.center_hi > region.x1) {
        throw std::invalid_argument("kp_functional: center span must lie on the region's bottom edge");
    }

    const double dx_cap = 1.0 / (16.0 * static_cast<double>(field.top_frequency()));
    if (sampling.dx_override > 0.0 &&
        sampling.dx_override / static_cast<double>(sampling.quad_refine) > dx_cap * (1.0 + 1e-9)) {
        throw ResolutionError("kp_functional: quadrature step exceeds 1/(16*top_frequency)");
    }

    const double rmax = std::min(sampling.max_radius, region.y1);
    const double rmin = sampling.min_radius > 0.0
                            ? sampling.min_radius
                            : 1.0 / (2.0 * static_cast<double>(field.pair().k_at(field_level(field))));
    std::vector<double> radii;
    for (double r = rmax;; r *= 0.5) {
        radii.push_back(r);
        if (r * 0.5 < rmin * (1.0 - 1e-12)) break;
    }

    std::vector<double> centers;
    centers.reserve(static_cast<std::size_t>(sampling.ball_centers));
    if (sampling.ball_centers == 1) {
        centers.push_back(0.5 * (sampling.center_lo + sampling.center_hi));
    } else {
        const double step =
            (sampling.center_hi - sampling.center_lo) / static_cast<double>(sampling.ball_centers - 1);
        for (int i = 0; i < sampling.ball_centers; ++i) {
            centers.push_back(sampling.center_lo + step * static_cast<double>(i));
        }
    }

    const auto offsets = disk_offsets(sampling.sup_samples);
    const int nrows = sampling.y_rows * sampling.quad_refine;

    const std::int64_t n_balls =
        static_cast<std::int64_t>(centers.size()) * static_cast<std::int64_t>(radii.size());
    std::vector<BallResult> results(static_cast<std::size_t>(n_balls));

    for_each_chunk(n_balls, 1, [&](std::size_t, std::int64_t b0, std::int64_t b1) {
        for (std::int64_t b = b0; b < b1; ++b) {
            const double q = centers[static_cast<std::size_t>(b) / radii.size()];
            const double r = radii[static_cast<std::size_t>(b) % radii.size()];

            double dx = sampling.dx_override > 0.0 ? sampling.dx_override : std::min(dx_cap, r / 16.0);
            dx /= static_cast<double>(sampling.quad_refine);
            const auto ncols = static_cast<std::int64_t>(std::ceil(2.0 * r / dx));
            const double dxe = 2.0 * r / static_cast<double>(ncols);
            const double dye = r / static_cast<double>(nrows);

            KahanSum sum;
            std::int64_t cells = 0;
            for (std::int64_t i = 0; i < ncols; ++i) {
                const double x = q - r + (static_cast<double>(i) + 0.5) * dxe;
                const double xo = x - q;
                for (int m = 0; m < nrows; ++m) {
                    const double y = (static_cast<double>(m) + 0.5) * dye;
                    if (xo * xo + y * y >= r * r) break;
                    sum.add(density_from_offsets(field, x, y, offsets));
                    ++cells;
                }
            }
            results[static_cast<std::size_t>(b)] = {sum.value() * dxe * dye / r, cells};
        }
    });

    KPEstimate est;
    est.ball_centers = static_cast<int>(centers.size());
    est.radii_per_center = static_cast<int>(radii.size());
    est.sup_samples = sampling.sup_samples;
    est.center = centers.front();
    est.radius = radii.front();
    for (std::int64_t b = 0; b < n_balls; ++b) {
        const auto& res = results[static_cast<std::size_t>(b)];
        est.quad_points += res.cells;
        if (res.value > est.value) {
            est.value = res.value;
            est.center = centers[static_cast<std::size_t>(b) / radii.size()];
            est.radius = radii[static_cast<std::size_t>(b) % radii.size()];
        }
    }
    return est;
}

double kp_bound_constant(const AmplitudeSchedule& schedule) {
    const double a0 = schedule.sqrt_form_scale();
    return 0.168 * std::numbers::pi * std::numbers::pi * a0 * a0;
}

double kp_lower_bound_analytic(int j, const LacunaryPair& pair, const AmplitudeSchedule& schedule) {
    if (j < 1 || j > pair.size()) {
        throw std::invalid_argument("kp_lower_bound_analytic: j outside pair length");
    }
    const double ratio =
        static_cast<double>(pair.h_at(j)) / static_cast<double>(pair.k_at(j));
    if (ratio < 5.0 / 3.0) {
        throw std::invalid_argument("kp_lower_bound_analytic: requires h_j >= (5/3)*k_j");
    }
    return kp_bound_constant(schedule) * ratio * ratio / static_cast<double>(j);
}

}  // namespace emlab
