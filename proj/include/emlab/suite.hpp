#pragma once

// Experiment suites behind the CLI subcommands. Each suite builds result
// tables, evaluates its invariant checks (hard = correctness gate, soft =
// reported metric), writes CSV (always) and SVG (if requested) into the
// configured output directory, and returns the report.

#include <iosfwd>
#include <string>
#include <vector>

#include "emlab/config.hpp"
#include "emlab/csv.hpp"
#include "emlab/svg.hpp"

namespace emlab {

struct CheckResult {
    std::string name;
    bool hard = true;
    bool passed = true;  // soft checks stay true; they are reported, not gated
    std::string detail;  // measured values and tolerances, human-readable
};

struct SuitePlot {
    std::string file_stem;
    ResultTable table;
    PlotSpec spec;
};

struct SuiteReport {
    std::string suite_name;
    std::vector<std::pair<std::string, ResultTable>> tables;  // file stem -> table
    std::vector<SuitePlot> plots;
    std::vector<CheckResult> checks;

    bool all_hard_passed() const;
};

SuiteReport run_suite(const RunConfig& cfg);

void print_report(const SuiteReport& report, const RunConfig& cfg, std::ostream& os);

}  // namespace emlab
