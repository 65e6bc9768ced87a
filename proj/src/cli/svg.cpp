#include "epicast/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "epicast/csv.hpp"

namespace epicast::cli {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& s) {
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

}  // namespace

std::string line_chart_svg(const std::string& title, const std::vector<PlotLine>& lines, int width,
                           int height) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& line : lines) {
        for (std::size_t i = 0; i < std::min(line.x.size(), line.y.size()); ++i) {
            if (!std::isfinite(line.x[i]) || !std::isfinite(line.y[i])) continue;
            x_lo = std::min(x_lo, line.x[i]);
            x_hi = std::max(x_hi, line.x[i]);
            y_lo = std::min(y_lo, line.y[i]);
            y_hi = std::max(y_hi, line.y[i]);
        }
    }
    if (!(x_hi > x_lo)) { x_lo -= 1.0; x_hi += 1.0; }
    if (!(y_hi > y_lo)) { y_lo -= 1.0; y_hi += 1.0; }

    const double left = 70, right = 20, top = 40, bottom = 40;
    const double pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) { return top + ph - (y - y_lo) / (y_hi - y_lo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << left - 5 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\">"
        << format_number(y_hi) << "</text>\n";
    svg << "<text x=\"" << left - 5 << "\" y=\"" << top + ph << "\" text-anchor=\"end\">"
        << format_number(y_lo) << "</text>\n";
    svg << "<text x=\"" << left << "\" y=\"" << height - 20 << "\">" << format_number(x_lo) << "</text>\n";
    svg << "<text x=\"" << left + pw << "\" y=\"" << height - 20 << "\" text-anchor=\"end\">"
        << format_number(x_hi) << "</text>\n";

    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto& line = lines[k];
        const char* colour = kPalette[k % std::size(kPalette)];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < std::min(line.x.size(), line.y.size()); ++i) {
            if (!std::isfinite(line.x[i]) || !std::isfinite(line.y[i])) continue;
            svg << format_number(std::round(px(line.x[i]) * 100) / 100) << ','
                << format_number(std::round(py(line.y[i]) * 100) / 100) << ' ';
        }
        svg << "\"/>\n";
        const double ly = top + 15 + 15 * static_cast<double>(k);
        svg << "<line x1=\"" << left + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + 30
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << left + 35 << "\" y=\"" << ly << "\">" << escape(line.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace epicast::cli
