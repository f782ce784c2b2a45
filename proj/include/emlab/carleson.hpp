#pragma once

// Carleson-type functional of a coefficient field over boundary balls:
//   P(A) = sup over balls B(q, r) centered on the bottom edge of
//          (1/r) * integral over B(q,r) in the upper half plane of
//          sup_{Y in B(X, y(X)/2)} |grad A(Y)|^2 * y(Y) dX.
// The inner sup is sampled on a nested low-discrepancy point set (monotone in
// the sample count); the outer integral is composite midpoint quadrature on
// the half-disk; the outer sup scans nested center/radius ladders.

#include <cstdint>

#include "emlab/field.hpp"

namespace emlab {

struct Region {
    double x0, x1;  // bottom edge [x0, x1] on the boundary line
    double y1;      // height

    void validate() const;
};

struct KpSampling {
    int ball_centers = 5;     // equispaced on [center_lo, center_hi]; use 2^a+1
                              // counts so refined center sets nest
    double center_lo = 0.0;
    double center_hi = 1.0;
    double max_radius = 0.5;  // radii halve from here
    double min_radius = 0.0;  // 0 = auto: 1/(2 * k at the field's level)
    int y_rows = 32;          // quadrature rows per ball height
    int sup_samples = 24;     // inner-sup samples per quadrature cell
    int quad_refine = 1;      // multiplies both quadrature densities
    double dx_override = 0.0; // 0 = auto from the resolution rule
};

struct KPEstimate {
    double value = 0.0;
    double center = 0.0;  // attaining ball
    double radius = 0.0;
    int ball_centers = 0;
    int radii_per_center = 0;
    std::int64_t quad_points = 0;  // total midpoint cells over all balls
    int sup_samples = 0;
};

// Sampled sup over the half-Whitney ball at (x, y): monotone nondecreasing in
// sup_samples (nested samples), a lower bound of the true sup.
double kp_local_density(const CoefficientField& field, double x, double y, int sup_samples);

KPEstimate kp_functional(const CoefficientField& field, const Region& region,
                         const KpSampling& sampling);

// Closed-form lower bound c0 * (h_j/k_j)^2 / j for schedules a_j = A0/sqrt(j).
// Derivation (bottom pure layer of the Level(j) field, ball radius r = 1/(2 k_j)):
//   |grad A(x', y')|^2 >= phi_j'(x')^2 = (2 pi h_j a_j)^2 sin^2(2 pi h_j x')
// holds below 1/k_j. For (x, y) in the rectangle T = {|x - q| <= 0.6 r,
// 0.6 r <= y <= 0.8 r} (inside the ball: 0.6^2 + 0.8^2 = 1, and inside the
// pure layer: 0.8 r = 0.4/k_j < 1/k_j), the midline of B((x,y), y/2) spans an
// x'-interval of width y >= 0.6 r = 0.3/k_j >= half period 1/(2 h_j) whenever
// h_j >= (5/3) k_j, so the true inner sup reaches sin^2 = 1 at height y:
//   local density >= (2 pi h_j a_j)^2 * y.
// Integrating y over T gives 0.168 r^3, hence
//   (1/r) * integral >= (2 pi h_j a_j)^2 * 0.168 r^2 = c0 (h_j/k_j)^2 / j,
//   c0 = 0.168 * pi^2 * A0^2   (= 0.0105 for A0 = 1/(4 pi)).
double kp_lower_bound_analytic(int j, const LacunaryPair& pair, const AmplitudeSchedule& schedule);

// The constant c0 above, exposed for reports.
double kp_bound_constant(const AmplitudeSchedule& schedule);

}  // namespace emlab
