#pragma once

// Amplitude law a_j of the oscillation factors phi_j = 1 + a_j cos(2 pi h_j x):
//   Sqrt:    a_j = 1/(4 pi sqrt(j))
//   Linear:  a_j = 1/(4 pi j)
//   Scaled:  a_j = scale/sqrt(j), 0 <= scale < 1 (keeps phi_j > 0)
// scale = 0 (AmplitudeSchedule::zero) is the documented degenerate profile
// used by constant-field fixtures; CLI configs still require scale in (0,1).

#include <string>

namespace emlab {

enum class ScheduleKind { Sqrt, Linear, Scaled };

class AmplitudeSchedule {
public:
    static AmplitudeSchedule sqrt_schedule();
    static AmplitudeSchedule linear_schedule();
    static AmplitudeSchedule scaled(double scale);
    static AmplitudeSchedule zero() { return scaled(0.0); }

    // a_j for 1-based j; strictly decreasing in j, in [0, 1).
    double amplitude(int j) const;

    ScheduleKind kind() const { return kind_; }
    double scale() const { return scale_; }

    // The leading constant A0 when a_j = A0/sqrt(j); throws for Linear,
    // whose amplitudes decay faster than any A0/sqrt(j).
    double sqrt_form_scale() const;

    std::string name() const;  // "sqrt" | "linear" | "scaled:<value>"

private:
    AmplitudeSchedule(ScheduleKind kind, double scale) : kind_(kind), scale_(scale) {}

    ScheduleKind kind_;
    double scale_;
};

}  // namespace emlab
