#include "qopt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "qopt/errors.hpp"

namespace qopt {
namespace io {

std::string format_float(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::string format_coord(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

std::string format_tick(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", value);
    return buf;
}

} // namespace

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvBuilder::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) {
        cells.push_back(format_float(v));
    }
    add_row(cells);
}

void CsvBuilder::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
        throw IoError("CsvBuilder: row width differs from header width");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<double>& x,
                           const std::vector<SvgSeries>& series) {
    constexpr double left = 70.0, right = 620.0, top = 40.0, bottom = 350.0;

    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    if (!x.empty()) {
        x_min = *std::min_element(x.begin(), x.end());
        x_max = *std::max_element(x.begin(), x.end());
    }
    bool have_y = false;
    for (const auto& s : series) {
        for (double v : s.y) {
            if (!have_y) {
                y_min = y_max = v;
                have_y = true;
            } else {
                y_min = std::min(y_min, v);
                y_max = std::max(y_max, v);
            }
        }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    const auto sx = [&](double v) {
        return left + (v - x_min) / (x_max - x_min) * (right - left);
    };
    const auto sy = [&](double v) {
        return bottom - (v - y_min) / (y_max - y_min) * (bottom - top);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
           "viewBox=\"0 0 640 400\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + title + "</text>\n";
    svg += "<line x1=\"70\" y1=\"350\" x2=\"620\" y2=\"350\" stroke=\"black\"/>\n";
    svg += "<line x1=\"70\" y1=\"40\" x2=\"70\" y2=\"350\" stroke=\"black\"/>\n";
    svg += "<text x=\"345\" y=\"385\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" + x_label + "</text>\n";
    svg += "<text x=\"18\" y=\"195\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 18 195)\">" + y_label + "</text>\n";

    for (double frac : {0.0, 0.5, 1.0}) {
        const double xv = x_min + frac * (x_max - x_min);
        const double yv = y_min + frac * (y_max - y_min);
        svg += "<text x=\"" + format_coord(sx(xv)) + "\" y=\"366\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"11\">" + format_tick(xv) +
               "</text>\n";
        svg += "<text x=\"64\" y=\"" + format_coord(sy(yv) + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               format_tick(yv) + "</text>\n";
    }

    double legend_y = 52.0;
    for (const auto& s : series) {
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = std::min(x.size(), s.y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) svg += ' ';
            svg += format_coord(sx(x[i])) + "," + format_coord(sy(s.y[i]));
        }
        svg += "\"/>\n";
        if (series.size() > 1) {
            svg += "<text x=\"584\" y=\"" + format_coord(legend_y) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
                   s.color + "\">" + s.name + "</text>\n";
            legend_y += 14.0;
        }
    }
    svg += "</svg>\n";
    return svg;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

} // namespace io
} // namespace qopt
