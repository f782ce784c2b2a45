#include "emlab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace emlab {

void ResultTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size()) {
        throw std::invalid_argument("ResultTable: row width does not match the header");
    }
    rows.push_back(std::move(cells));
}

std::string format_cell(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_cell(int value) { return std::to_string(value); }

std::string format_cell(std::int64_t value) { return std::to_string(value); }

std::string to_csv(const ResultTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace emlab
