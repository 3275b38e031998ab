#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cyclecast::plot {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo == hi) {
            lo -= 1;
            hi += 1;
        }
    }
};

void header(std::ostringstream& svg, const Options& opts) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
        << opts.height << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        svg << "<text x=\"" << opts.width / 2
            << "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\" font-family=\"sans-serif\">"
            << opts.title << "</text>\n";
}

void axis_labels(std::ostringstream& svg, const Options& opts) {
    if (!opts.x_label.empty())
        svg << "<text x=\"" << (kMarginLeft + (opts.width - kMarginLeft - kMarginRight) / 2)
            << "\" y=\"" << opts.height - 10
            << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
            << opts.x_label << "</text>\n";
    if (!opts.y_label.empty())
        svg << "<text x=\"16\" y=\"" << (kMarginTop + (opts.height - kMarginTop - kMarginBottom) / 2)
            << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\" "
               "transform=\"rotate(-90 16 "
            << (kMarginTop + (opts.height - kMarginTop - kMarginBottom) / 2) << ")\">"
            << opts.y_label << "</text>\n";
}

}  // namespace

std::string render_lines(const std::vector<Series>& series, const Options& opts) {
    if (series.empty()) throw std::invalid_argument("no series to plot");
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw std::invalid_argument("plot series empty or length mismatch");
    }
    Range rx, ry;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            rx.include(s.x[i]);
            double y = s.y[i];
            if (opts.log_y) {
                if (y <= 0) continue;
                y = std::log10(y);
            }
            ry.include(y);
        }
    if (!std::isfinite(ry.lo)) throw std::invalid_argument("no plottable points");
    rx.pad();
    ry.pad();

    double plot_w = opts.width - kMarginLeft - kMarginRight;
    double plot_h = opts.height - kMarginTop - kMarginBottom;
    auto sx = [&](double v) { return kMarginLeft + (v - rx.lo) / (rx.hi - rx.lo) * plot_w; };
    auto sy = [&](double v) {
        double t = opts.log_y ? std::log10(std::max(v, 1e-300)) : v;
        return kMarginTop + plot_h - (t - ry.lo) / (ry.hi - ry.lo) * plot_h;
    };

    std::ostringstream svg;
    header(svg, opts);
    // frame + ticks
    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
        double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
        svg << "<text x=\"" << num(sx(fx)) << "\" y=\"" << opts.height - kMarginBottom + 16
            << "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">" << tick(fx)
            << "</text>\n";
        double ylab = opts.log_y ? std::pow(10.0, fy) : fy;
        svg << "<text x=\"" << kMarginLeft - 6 << "\" y=\""
            << num(kMarginTop + plot_h - plot_h * i / 4.0 + 3)
            << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" << tick(ylab)
            << "</text>\n";
    }

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % 6];
        if (s.x.size() == 1) {
            svg << "<circle cx=\"" << num(sx(s.x[0])) << "\" cy=\"" << num(sy(s.y[0]))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        } else {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (opts.log_y && s.y[i] <= 0) continue;
                svg << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
            }
            svg << "\"/>\n";
        }
        if (series.size() > 1 && !s.label.empty()) {
            int ly = kMarginTop + 14 + static_cast<int>(k) * 16;
            svg << "<rect x=\"" << kMarginLeft + 8 << "\" y=\"" << ly - 9
                << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
            svg << "<text x=\"" << kMarginLeft + 22 << "\" y=\"" << ly
                << "\" font-size=\"11\" font-family=\"sans-serif\">" << s.label << "</text>\n";
        }
    }
    axis_labels(svg, opts);
    svg << "</svg>\n";
    return svg.str();
}

std::string render_profile(const std::vector<double>& values, const Options& opts) {
    if (values.empty()) throw std::invalid_argument("no values to plot");
    Range ry;
    ry.include(0);
    for (double v : values) ry.include(v);
    ry.pad();

    double plot_w = opts.width - kMarginLeft - kMarginRight;
    double plot_h = opts.height - kMarginTop - kMarginBottom;
    double bar_w = plot_w / static_cast<double>(values.size());
    auto sy = [&](double v) {
        return kMarginTop + plot_h - (v - ry.lo) / (ry.hi - ry.lo) * plot_h;
    };

    std::ostringstream svg;
    header(svg, opts);
    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    double y0 = sy(0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        double yv = sy(values[i]);
        double top = std::min(yv, y0);
        double h = std::abs(yv - y0);
        svg << "<rect x=\"" << num(kMarginLeft + bar_w * static_cast<double>(i) + 1) << "\" y=\""
            << num(top) << "\" width=\"" << num(std::max(bar_w - 2, 0.5)) << "\" height=\""
            << num(h) << "\" fill=\"#1f77b4\"/>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
        svg << "<text x=\"" << kMarginLeft - 6 << "\" y=\""
            << num(kMarginTop + plot_h - plot_h * i / 4.0 + 3)
            << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" << tick(fy)
            << "</text>\n";
    }
    axis_labels(svg, opts);
    svg << "</svg>\n";
    return svg.str();
}

std::string render_heatmap(const std::vector<double>& values, std::size_t rows, std::size_t cols,
                           const Options& opts, int row_offset, int col_offset) {
    if (values.size() != rows * cols || values.empty())
        throw std::invalid_argument("heatmap shape mismatch or empty");
    Range r;
    for (double v : values)
        if (std::isfinite(v)) r.include(v);
    if (!std::isfinite(r.lo)) throw std::invalid_argument("heatmap has no finite cells");
    r.pad();

    double plot_w = opts.width - kMarginLeft - kMarginRight;
    double plot_h = opts.height - kMarginTop - kMarginBottom;
    double cw = plot_w / static_cast<double>(cols);
    double ch = plot_h / static_cast<double>(rows);

    std::ostringstream svg;
    header(svg, opts);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            double v = values[i * cols + j];
            std::string fill = "#cccccc";
            if (std::isfinite(v)) {
                double t = (v - r.lo) / (r.hi - r.lo);
                // light yellow (low) to dark red (high)
                int red = 255;
                int green = static_cast<int>(std::lround(237.0 * (1.0 - t) + 20.0 * t));
                int blue = static_cast<int>(std::lround(160.0 * (1.0 - t) + 20.0 * t));
                char buf[8];
                std::snprintf(buf, sizeof buf, "#%02x%02x%02x", red, green, blue);
                fill = buf;
            }
            svg << "<rect x=\"" << num(kMarginLeft + cw * static_cast<double>(j)) << "\" y=\""
                << num(kMarginTop + ch * static_cast<double>(i)) << "\" width=\"" << num(cw)
                << "\" height=\"" << num(ch) << "\" fill=\"" << fill
                << "\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
        }
    }
    for (std::size_t j = 0; j < cols; ++j)
        svg << "<text x=\"" << num(kMarginLeft + cw * (static_cast<double>(j) + 0.5)) << "\" y=\""
            << opts.height - kMarginBottom + 16
            << "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">"
            << (col_offset + static_cast<int>(j)) << "</text>\n";
    for (std::size_t i = 0; i < rows; ++i)
        svg << "<text x=\"" << kMarginLeft - 6 << "\" y=\""
            << num(kMarginTop + ch * (static_cast<double>(i) + 0.5) + 3)
            << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
            << (row_offset + static_cast<int>(i)) << "</text>\n";
    axis_labels(svg, opts);
    svg << "</svg>\n";
    return svg.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

}  // namespace cyclecast::plot
