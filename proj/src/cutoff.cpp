#include "emlab/cutoff.hpp"

#include <cmath>

namespace emlab {

namespace {

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double cutoff_eval(double t) {
    const double s = std::fabs(t);
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    const double n = bump(2.0 - s);
    const double d = bump(s - 1.0);
    return n / (n + d);
}

double cutoff_derivative(double t) {
    const double s = std::fabs(t);
    if (s <= 1.0 || s >= 2.0) return 0.0;
    const double n = bump(2.0 - s);
    const double d = bump(s - 1.0);
    // d/ds [n/(n+d)] = -n*d*(1/(2-s)^2 + 1/(s-1)^2) / (n+d)^2.
    // Near the plateau edges one bump underflows to exactly 0 and the whole
    // expression collapses to 0, matching the flat analytic limit.
    const double a = 2.0 - s;
    const double b = s - 1.0;
    const double denom = (n + d) * (n + d);
    const double dds = -(n * d) * (1.0 / (a * a) + 1.0 / (b * b)) / denom;
    return t >= 0.0 ? dds : -dds;
}

}  // namespace emlab
