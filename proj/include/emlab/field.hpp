#pragma once

// Layered oscillatory coefficient fields. The scalar alpha(x, y) is the (2,2)
// entry of the diagonal matrix diag(1, alpha). Layers are indexed by the
// layer scales k_j:
//   |y| >= 1/k_1              -> phi_1(x)
//   1/k_{j+1} <= |y| < 1/k_j  -> psi(k_{j+1} |y|) phi_{j+1}(x)
//                                + (1 - psi(k_{j+1} |y|)) phi_j(x)
//   y = 0                     -> 1                       (Limit field)
//   0 < |y| < 1/k_J           -> phi_J(x)                (deepest available)
// The Level(j) truncation freezes the profile at phi_j below height 1/k_j and
// agrees with the Limit field bit-for-bit at |y| >= 1/k_j (shared code path).

#include "emlab/lacunary.hpp"
#include "emlab/schedule.hpp"

namespace emlab {

struct Gradient2 {
    double dx;
    double dy;
};

class CoefficientField {
public:
    static CoefficientField limit(LacunaryPair pair, AmplitudeSchedule schedule);
    static CoefficientField level(LacunaryPair pair, AmplitudeSchedule schedule, int level_j);

    // phi_j(x) = 1 + a_j cos(2 pi h_j x) and its x-derivative, 1-based j.
    double phi(int j, double x) const;
    double phi_derivative(int j, double x) const;

    double eval(double x, double y) const;
    // Analytic gradient (d/dx, d/dy). Throws for the Limit field at y = 0,
    // where the construction is not differentiable.
    Gradient2 gradient(double x, double y) const;

    const LacunaryPair& pair() const { return pair_; }
    const AmplitudeSchedule& schedule() const { return schedule_; }
    bool is_limit() const { return level_ == 0; }
    int level_index() const { return level_; }  // 0 for the Limit field
    double amplitude(int j) const { return schedule_.amplitude(j); }
    // Highest oscillation frequency the field can exhibit: h_level for a
    // Level field, h_J for the Limit field. Drives resolution rules.
    std::int64_t top_frequency() const;
    // Layer scale governing the vertical resolution rule: k_{j+1} if it
    // exists, minimally continued as 2*k_j at the end of the pair.
    std::int64_t next_layer_scale() const;

private:
    CoefficientField(LacunaryPair pair, AmplitudeSchedule schedule, int level)
        : pair_(std::move(pair)), schedule_(schedule), level_(level) {}

    double blended(double x, double ay) const;

    LacunaryPair pair_;
    AmplitudeSchedule schedule_;
    int level_;
};

}  // namespace emlab
