#pragma once

// Deterministic text output helpers for the experiment runner: CSV with a
// pinned float format (17 significant digits, '.' decimal separator, '\n'
// line endings) and minimal dependency-free SVG line charts with no
// embedded timestamps, so identical inputs give identical bytes.

#include <string>
#include <vector>

namespace qopt {
namespace io {

// %.17g with the C locale's '.' separator.
std::string format_float(double value);

class CsvBuilder {
  public:
    explicit CsvBuilder(const std::vector<std::string>& header);

    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& cells);

    const std::string& str() const { return text_; }

  private:
    std::size_t columns_;
    std::string text_;
};

struct SvgSeries {
    std::string name;
    std::string color; // SVG color string
    std::vector<double> y;
};

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<double>& x,
                           const std::vector<SvgSeries>& series);

// Throws IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

} // namespace io
} // namespace qopt
