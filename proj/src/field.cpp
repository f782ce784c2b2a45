#include "emlab/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "emlab/cutoff.hpp"

namespace emlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CoefficientField CoefficientField::limit(LacunaryPair pair, AmplitudeSchedule schedule) {
    if (pair.size() < 1) throw std::invalid_argument("CoefficientField: empty pair");
    return CoefficientField(std::move(pair), schedule, 0);
}

CoefficientField CoefficientField::level(LacunaryPair pair, AmplitudeSchedule schedule, int level_j) {
    if (level_j < 1 || level_j > pair.size()) {
        throw std::invalid_argument("CoefficientField: level index outside pair length");
    }
    return CoefficientField(std::move(pair), schedule, level_j);
}

double CoefficientField::phi(int j, double x) const {
    if (j < 1 || j > pair_.size()) throw std::invalid_argument("phi: factor index outside pair length");
    const double a = schedule_.amplitude(j);
    return 1.0 + a * std::cos(kTwoPi * static_cast<double>(pair_.h_at(j)) * x);
}

double CoefficientField::phi_derivative(int j, double x) const {
    if (j < 1 || j > pair_.size()) throw std::invalid_argument("phi_derivative: factor index outside pair length");
    const double a = schedule_.amplitude(j);
    const double h = static_cast<double>(pair_.h_at(j));
    return -kTwoPi * h * a * std::sin(kTwoPi * h * x);
}

std::int64_t CoefficientField::top_frequency() const {
    return level_ > 0 ? pair_.h_at(level_) : pair_.h_at(pair_.size());
}

std::int64_t CoefficientField::next_layer_scale() const {
    const int j = level_ > 0 ? level_ : pair_.size();
    return j < pair_.size() ? pair_.k_at(j + 1) : 2 * pair_.k_at(j);
}

// Shared evaluation above the truncation height (and everywhere for Limit):
// callers guarantee ay < 1/k_1 is possible, handle the top layer themselves.
double CoefficientField::blended(double x, double ay) const {
    const int n = pair_.size();
    // Smallest 1-based j with ay >= 1/k_{j+1}: blend layer between phi_j and
    // phi_{j+1}. Scanning upward is fine at n <= 30.
    for (int j = 1; j < n; ++j) {
        const double inv_next = 1.0 / static_cast<double>(pair_.k_at(j + 1));
        if (ay >= inv_next) {
            const double t = static_cast<double>(pair_.k_at(j + 1)) * ay;
            const double w = cutoff_eval(t);
            return w * phi(j + 1, x) + (1.0 - w) * phi(j, x);
        }
    }
    // Below the deepest available scale the finite pair bottoms out at phi_n.
    return phi(n, x);
}

double CoefficientField::eval(double x, double y) const {
    const double ay = std::fabs(y);
    if (level_ > 0 && ay < 1.0 / static_cast<double>(pair_.k_at(level_))) {
        return phi(level_, x);
    }
    if (ay >= 1.0 / static_cast<double>(pair_.k_at(1))) return phi(1, x);
    if (y == 0.0) return 1.0;  // Limit field on the boundary line
    return blended(x, ay);
}

Gradient2 CoefficientField::gradient(double x, double y) const {
    const double ay = std::fabs(y);
    if (level_ > 0 && ay < 1.0 / static_cast<double>(pair_.k_at(level_))) {
        return {phi_derivative(level_, x), 0.0};
    }
    if (ay >= 1.0 / static_cast<double>(pair_.k_at(1))) return {phi_derivative(1, x), 0.0};
    if (y == 0.0) {
        throw std::domain_error("CoefficientField::gradient: Limit field is not differentiable at y = 0");
    }
    const int n = pair_.size();
    for (int j = 1; j < n; ++j) {
        const double knext = static_cast<double>(pair_.k_at(j + 1));
        if (ay >= 1.0 / knext) {
            const double t = knext * ay;
            const double w = cutoff_eval(t);
            const double dw = cutoff_derivative(t) * knext * (y >= 0.0 ? 1.0 : -1.0);
            const double dx = w * phi_derivative(j + 1, x) + (1.0 - w) * phi_derivative(j, x);
            const double dy = dw * (phi(j + 1, x) - phi(j, x));
            return {dx, dy};
        }
    }
    return {phi_derivative(n, x), 0.0};
}

}  // namespace emlab
