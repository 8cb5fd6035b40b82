#pragma once

#include <string>
#include <vector>

namespace anharmom::cli {

// Decimal text for a double: up to 9 significant digits, locale-free,
// byte-stable across runs and platforms with IEEE doubles.
std::string format_value(double v);

// Writes content to path atomically (temp file in the same directory, then
// rename).
void write_file_atomic(const std::string& path, const std::string& content);

// CSV table: header row, rows of formatted doubles (or preformatted cells),
// newline-terminated, UTF-8.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);
    void add_row(const std::vector<double>& values);
    void add_row_cells(const std::vector<std::string>& cells);
    std::string str() const;
    void write(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

// Minimal static SVG plots: polylines over linear axes and a rectangular
// heatmap. No interactivity.
struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series,
                           bool log_y = false);

std::string heatmap_svg(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        const std::vector<double>& x_centers,
                        const std::vector<double>& y_centers,
                        const std::vector<std::vector<double>>& values);

} // namespace anharmom::cli
