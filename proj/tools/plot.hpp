#pragma once

#include <string>
#include <vector>

namespace cyclecast::plot {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Options {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    int width = 900;
    int height = 480;
};

/// Line/overlay plot. One series draws a single line; several draw an
/// overlay with a legend. Output is deterministic: identical inputs yield
/// byte-identical SVG.
std::string render_lines(const std::vector<Series>& series, const Options& opts);

/// Bar-style plot of one value per phase (cycle profiles, weekday totals).
std::string render_profile(const std::vector<double>& values, const Options& opts);

/// Heatmap of a row-major matrix; cell (i, j) is values[i * cols + j].
/// Row/column tick labels start at the given offsets.
std::string render_heatmap(const std::vector<double>& values, std::size_t rows,
                           std::size_t cols, const Options& opts, int row_offset = 1,
                           int col_offset = 1);

/// Write via a temp file and rename, so failed runs leave no partial output.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace cyclecast::plot
