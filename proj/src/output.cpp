#include "anharmom/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace anharmom::cli {

std::string format_value(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path())
        fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values)
{
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values)
        cells.push_back(format_value(v));
    add_row_cells(cells);
}

void CsvTable::add_row_cells(const std::vector<std::string>& cells)
{
    if (cells.size() != columns_.size())
        throw std::invalid_argument("CsvTable: row width mismatch");
    rows_.push_back(cells);
}

std::string CsvTable::str() const
{
    std::ostringstream out;
    for (std::size_t i = 0; i < columns_.size(); ++i)
        out << (i ? "," : "") << columns_[i];
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

void CsvTable::write(const std::string& path) const
{
    write_file_atomic(path, str());
}

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 36, kBottom = 52;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

struct AxisRange {
    double lo = 0, hi = 1;
    void include(double v)
    {
        if (!std::isfinite(v))
            return;
        lo = std::min(lo == 0 && hi == 1 ? v : lo, v);
        hi = std::max(lo == v && hi == 1 ? v : hi, v);
    }
};

std::pair<double, double> bounds(const std::vector<const std::vector<double>*>& arrays)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto* a : arrays)
        for (double v : *a)
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
    if (!(lo < hi)) {
        if (!std::isfinite(lo)) {
            lo = 0;
            hi = 1;
        } else {
            hi = lo + 1;
        }
    }
    return {lo, hi};
}

std::string esc(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

void chart_frame(std::ostringstream& svg, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 double x_lo, double x_hi, double y_lo, double y_hi,
                 bool log_y)
{
    svg << "<rect x='" << kLeft << "' y='" << kTop << "' width='"
        << (kWidth - kLeft - kRight) << "' height='" << (kHeight - kTop - kBottom)
        << "' fill='none' stroke='#333'/>\n";
    svg << "<text x='" << kWidth / 2 << "' y='20' text-anchor='middle' "
           "font-size='15'>" << esc(title) << "</text>\n";
    svg << "<text x='" << kWidth / 2 << "' y='" << kHeight - 12
        << "' text-anchor='middle' font-size='13'>" << esc(x_label) << "</text>\n";
    svg << "<text x='16' y='" << kHeight / 2
        << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 "
        << kHeight / 2 << ")'>" << esc(y_label) << "</text>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fx = i / 5.0;
        const double px = kLeft + fx * (kWidth - kLeft - kRight);
        const double vx = x_lo + fx * (x_hi - x_lo);
        svg << "<line x1='" << px << "' y1='" << kHeight - kBottom << "' x2='" << px
            << "' y2='" << kHeight - kBottom + 5 << "' stroke='#333'/>\n";
        svg << "<text x='" << px << "' y='" << kHeight - kBottom + 18
            << "' text-anchor='middle' font-size='11'>" << format_value(vx)
            << "</text>\n";
        const double py = kHeight - kBottom - fx * (kHeight - kTop - kBottom);
        const double vy = log_y ? std::pow(10.0, y_lo + fx * (y_hi - y_lo))
                                : y_lo + fx * (y_hi - y_lo);
        svg << "<line x1='" << kLeft - 5 << "' y1='" << py << "' x2='" << kLeft
            << "' y2='" << py << "' stroke='#333'/>\n";
        svg << "<text x='" << kLeft - 8 << "' y='" << py + 4
            << "' text-anchor='end' font-size='11'>" << format_value(vy)
            << "</text>\n";
    }
}

} // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series, bool log_y)
{
    std::vector<const std::vector<double>*> xs, ys;
    std::vector<std::vector<double>> y_transformed;
    for (const auto& s : series) {
        xs.push_back(&s.x);
        std::vector<double> t;
        t.reserve(s.y.size());
        for (double v : s.y)
            t.push_back(log_y ? (v > 0 ? std::log10(v)
                                       : std::numeric_limits<double>::quiet_NaN())
                              : v);
        y_transformed.push_back(std::move(t));
    }
    for (const auto& t : y_transformed)
        ys.push_back(&t);

    const auto [x_lo, x_hi] = bounds(xs);
    const auto [y_lo, y_hi] = bounds(ys);

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
        << "' height='" << kHeight << "'>\n";
    chart_frame(svg, title, x_label, y_label, x_lo, x_hi, y_lo, y_hi, log_y);

    const double sx = (kWidth - kLeft - kRight) / (x_hi - x_lo);
    const double sy = (kHeight - kTop - kBottom) / (y_hi - y_lo);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % 6];
        svg << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (std::size_t j = 0; j < series[i].x.size(); ++j) {
            const double yv = y_transformed[i][j];
            if (!std::isfinite(yv))
                continue;
            svg << format_value(kLeft + (series[i].x[j] - x_lo) * sx) << ","
                << format_value(kHeight - kBottom - (yv - y_lo) * sy) << " ";
        }
        svg << "'/>\n";
        svg << "<text x='" << kWidth - kRight - 8 << "' y='" << kTop + 16 + 16 * i
            << "' text-anchor='end' font-size='12' fill='" << color << "'>"
            << esc(series[i].label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

namespace {

std::string ramp_color(double t)
{
    // Simple blue -> white -> red ramp.
    t = std::clamp(t, 0.0, 1.0);
    int r, g, b;
    if (t < 0.5) {
        const double u = t / 0.5;
        r = static_cast<int>(30 + 225 * u);
        g = static_cast<int>(60 + 195 * u);
        b = 255;
    } else {
        const double u = (t - 0.5) / 0.5;
        r = 255;
        g = static_cast<int>(255 - 195 * u);
        b = static_cast<int>(255 - 215 * u);
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

} // namespace

std::string heatmap_svg(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        const std::vector<double>& x_centers,
                        const std::vector<double>& y_centers,
                        const std::vector<std::vector<double>>& values)
{
    const std::size_t nx = x_centers.size(), ny = y_centers.size();
    if (values.size() != ny)
        throw std::invalid_argument("heatmap_svg: row count mismatch");

    double v_lo = std::numeric_limits<double>::infinity(), v_hi = -v_lo;
    for (const auto& row : values)
        for (double v : row)
            if (std::isfinite(v)) {
                v_lo = std::min(v_lo, v);
                v_hi = std::max(v_hi, v);
            }
    if (!(v_lo < v_hi)) {
        v_lo = 0;
        v_hi = 1;
    }

    const double x_lo = x_centers.front(), x_hi = x_centers.back();
    const double y_lo = y_centers.front(), y_hi = y_centers.back();

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
        << "' height='" << kHeight << "'>\n";
    chart_frame(svg, title, x_label, y_label, x_lo, x_hi, y_lo, y_hi, false);

    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    const double cw = plot_w / nx, ch = plot_h / ny;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        if (values[iy].size() != nx)
            throw std::invalid_argument("heatmap_svg: column count mismatch");
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = values[iy][ix];
            const std::string color =
                std::isfinite(v) ? ramp_color((v - v_lo) / (v_hi - v_lo)) : "#999999";
            svg << "<rect x='" << format_value(kLeft + ix * cw) << "' y='"
                << format_value(kHeight - kBottom - (iy + 1) * ch) << "' width='"
                << format_value(cw + 0.5) << "' height='" << format_value(ch + 0.5)
                << "' fill='" << color << "'/>\n";
        }
    }
    svg << "<text x='" << kWidth - kRight - 8 << "' y='" << kTop - 6
        << "' text-anchor='end' font-size='11'>range [" << format_value(v_lo)
        << ", " << format_value(v_hi) << "]</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace anharmom::cli
