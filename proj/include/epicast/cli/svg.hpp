#pragma once

#include <string>
#include <vector>

namespace epicast::cli {

struct PlotLine {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal standalone SVG line chart with axes extents and a legend.
std::string line_chart_svg(const std::string& title, const std::vector<PlotLine>& lines,
                           int width = 800, int height = 400);

}  // namespace epicast::cli
