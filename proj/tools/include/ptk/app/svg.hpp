#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ptk::app {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::optional<double> y_min;
    std::optional<double> y_max;
    std::vector<Series> series;
};

// Standalone SVG 1.1 line plot. NaN breaks a line; points outside the y range
// are drawn on the frame edge with a triangle marker.
std::string render_svg(const PlotSpec& spec);

}  // namespace ptk::app
