#include "emlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace emlab {

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 24.0, kTop = 42.0, kBottom = 64.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double parse_number(const std::string& cell) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw std::invalid_argument("render_svg: non-numeric cell '" + cell + "'");
    }
    return v;
}

}  // namespace

std::string render_svg(const ResultTable& table, const PlotSpec& spec) {
    if (table.rows.empty()) throw std::invalid_argument("render_svg: empty table");
    if (spec.y_columns.empty()) throw std::invalid_argument("render_svg: no series selected");
    const std::size_t ncols = table.columns.size();
    if (spec.x_column >= ncols) throw std::invalid_argument("render_svg: x column out of range");
    for (std::size_t c : spec.y_columns) {
        if (c >= ncols) throw std::invalid_argument("render_svg: y column out of range");
    }

    const std::size_t n = table.rows.size();
    std::vector<double> xs(n);
    std::vector<std::vector<double>> series(spec.y_columns.size(), std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
        xs[r] = parse_number(table.rows[r][spec.x_column]);
        for (std::size_t s = 0; s < spec.y_columns.size(); ++s) {
            double v = parse_number(table.rows[r][spec.y_columns[s]]);
            if (spec.log_y) {
                if (!(v > 0.0)) {
                    throw std::invalid_argument("render_svg: log scale requires positive values");
                }
                v = std::log10(v);
            }
            series[s][r] = v;
        }
    }

    double xmin = xs[0], xmax = xs[0];
    for (double v : xs) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    double ymin = series[0][0], ymax = series[0][0];
    for (const auto& s : series) {
        for (double v : s) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    auto widen = [](double& lo, double& hi) {
        const double span = hi - lo;
        if (span > 0.0) {
            lo -= 0.04 * span;
            hi += 0.04 * span;
        } else {
            const double pad = std::max(1.0, std::fabs(lo)) * 0.5;
            lo -= pad;
            hi += pad;
        }
    };
    widen(xmin, xmax);
    widen(ymin, ymax);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kHeight - kBottom - (y - ymin) / (ymax - ymin) * plot_h; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
           "\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           xml_escape(spec.title) + "</text>\n";

    // axes
    out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kHeight - kBottom) + "\" x2=\"" +
           fmt(kWidth - kRight) + "\" y2=\"" + fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 4; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 4.0;
        const double gx = px(fx);
        out += "<line x1=\"" + fmt(gx) + "\" y1=\"" + fmt(kHeight - kBottom) + "\" x2=\"" + fmt(gx) +
               "\" y2=\"" + fmt(kHeight - kBottom + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt(gx) + "\" y=\"" + fmt(kHeight - kBottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               xml_escape(fmt_tick(fx)) + "</text>\n";

        const double fy = ymin + (ymax - ymin) * t / 4.0;
        const double gy = py(fy);
        const double label = spec.log_y ? std::pow(10.0, fy) : fy;
        out += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(gy) + "\" x2=\"" + fmt(kLeft) +
               "\" y2=\"" + fmt(gy) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(gy + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               xml_escape(fmt_tick(label)) + "</text>\n";
    }

    out += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - kBottom + 38) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           xml_escape(spec.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt(kTop + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 " +
           fmt(kTop + plot_h / 2) + ")\">" + xml_escape(spec.y_label) +
           (spec.log_y ? " (log scale)" : "") + "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t r = 0; r < n; ++r) {
            if (r > 0) out += ' ';
            out += fmt(px(xs[r])) + "," + fmt(py(series[s][r]));
        }
        out += "\"/>\n";
        const double ly = kTop + 8.0 + 16.0 * static_cast<double>(s);
        out += "<line x1=\"" + fmt(kWidth - kRight - 130) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
               fmt(kWidth - kRight - 110) + "\" y2=\"" + fmt(ly) + "\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + fmt(kWidth - kRight - 104) + "\" y=\"" + fmt(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" +
               xml_escape(table.columns[spec.y_columns[s]]) + "</text>\n";
    }

    out += "<text x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kHeight - 10) +
           "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#555555\">" +
           xml_escape(spec.caption) + "</text>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace emlab
