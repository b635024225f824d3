#ifndef AEOD_SVG_HPP
#define AEOD_SVG_HPP

#include <string>
#include <vector>

#include "aeod/matrix.hpp"

namespace aeod {

/// One plotted series. radius > 0 draws circles at each point; radius = 0
/// connects the points with a polyline instead.
struct SvgSeries {
    std::string label;
    std::string color = "#1f77b4";
    double radius = 2.0;
    Vector x;
    Vector y;
};

/// Writes a self-contained SVG scatter/line plot with axes, tick labels,
/// title and a legend. Output is well-formed XML.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series);

} // namespace aeod

#endif
