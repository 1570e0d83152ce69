#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace onm {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Static line plot. Non-finite points are skipped.
struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<PlotSeries> series;
};

/// Self-contained SVG document; output depends only on the plot contents.
std::string render_svg(const LinePlot& plot);
void write_svg(const std::filesystem::path& path, const LinePlot& plot);

} // namespace onm
