#include "emlab/schedule.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace emlab {

AmplitudeSchedule AmplitudeSchedule::sqrt_schedule() {
    return AmplitudeSchedule(ScheduleKind::Sqrt, 1.0 / (4.0 * std::numbers::pi));
}

AmplitudeSchedule AmplitudeSchedule::linear_schedule() {
    return AmplitudeSchedule(ScheduleKind::Linear, 1.0 / (4.0 * std::numbers::pi));
}

AmplitudeSchedule AmplitudeSchedule::scaled(double scale) {
    if (!(scale >= 0.0) || scale >= 1.0) {
        throw std::invalid_argument("AmplitudeSchedule: scale must lie in [0, 1)");
    }
    return AmplitudeSchedule(ScheduleKind::Scaled, scale);
}

double AmplitudeSchedule::amplitude(int j) const {
    if (j < 1) throw std::invalid_argument("AmplitudeSchedule::amplitude: j must be >= 1");
    const double jj = static_cast<double>(j);
    switch (kind_) {
        case ScheduleKind::Sqrt:
            return scale_ / std::sqrt(jj);
        case ScheduleKind::Linear:
            return scale_ / jj;
        case ScheduleKind::Scaled:
            return scale_ / std::sqrt(jj);
    }
    return 0.0;  // unreachable
}

double AmplitudeSchedule::sqrt_form_scale() const {
    if (kind_ == ScheduleKind::Linear) {
        throw std::invalid_argument("AmplitudeSchedule: linear schedule has no A0/sqrt(j) form");
    }
    return scale_;
}

std::string AmplitudeSchedule::name() const {
    switch (kind_) {
        case ScheduleKind::Sqrt:
            return "sqrt";
        case ScheduleKind::Linear:
            return "linear";
        case ScheduleKind::Scaled: {
            std::ostringstream os;
            os << "scaled:" << scale_;
            return os.str();
        }
    }
    return "";  // unreachable
}

}  // namespace emlab
