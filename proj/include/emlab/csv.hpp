#pragma once

// Result tables and CSV emission. Cells are stored pre-formatted; numeric
// cells use 17 significant digits so a round-trip through the file is
// lossless, which the downstream cross-checks rely on.

#include <cstdint>
#include <string>
#include <vector>

namespace emlab {

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    // Appends a row; the cell count must match the header.
    void add_row(std::vector<std::string> cells);
};

std::string format_cell(double value);        // %.17g
std::string format_cell(int value);
std::string format_cell(std::int64_t value);

// Header line plus one line per row, comma separators, '\n' endings.
std::string to_csv(const ResultTable& table);

// Writes bytes exactly as given (binary mode).
void write_text_file(const std::string& path, const std::string& content);

}  // namespace emlab
