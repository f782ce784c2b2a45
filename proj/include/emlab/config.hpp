#pragma once

// Run configuration shared by the CLI and the suite runner. Values resolve
// with precedence: built-in defaults < config-file entries < command-line
// flags. Unknown keys are rejected rather than ignored.

#include <cstdint>
#include <string>
#include <vector>

#include "emlab/lacunary.hpp"
#include "emlab/schedule.hpp"

namespace emlab {

enum class Suite { Riesz, Weights, Kp, Solve, KernelCompare };

std::string to_string(Suite suite);

struct RunConfig {
    Suite suite = Suite::Riesz;
    int j_max = 0;  // 0 until resolved to the suite default
    AmplitudeSchedule schedule = AmplitudeSchedule::sqrt_schedule();
    LacunaryVariant variant = LacunaryVariant::Standard;
    int nx = 0, ny = 0;  // 0 = suite default / resolution-rule minimum
    double tol = 1e-10;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    bool svg = false;   // CSV is always written
    bool help = false;

    std::string stamp() const;  // one-line config echo for captions and logs
};

// args = argv[1..]; throws UsageError on malformed input, unknown keys,
// conflicting suite arguments, or out-of-range values.
RunConfig parse_config(const std::vector<std::string>& args);

std::string usage_text();

}  // namespace emlab
