#pragma once

// Static SVG line plots of result tables: one polyline per selected series,
// fixed canvas and palette, every coordinate printed with the same format,
// so identical inputs render byte-identical documents.

#include <cstddef>
#include <string>
#include <vector>

#include "emlab/csv.hpp"

namespace emlab {

struct PlotSpec {
    std::string title;
    std::string x_label, y_label;
    std::size_t x_column = 0;
    std::vector<std::size_t> y_columns;  // each becomes one polyline
    bool log_y = false;
    std::string caption;  // config stamp printed under the plot
};

// Throws invalid_argument for an empty table, column indices out of range,
// non-numeric cells in the selected columns, or log_y with values <= 0.
std::string render_svg(const ResultTable& table, const PlotSpec& spec);

}  // namespace emlab
