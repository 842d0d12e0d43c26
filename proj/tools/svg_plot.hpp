#pragma once

#include <string>
#include <vector>

namespace vortexform::tools {

struct Series {
    std::string label;
    std::string color;
    std::vector<double> y;
};

// Line plot against a shared time axis. Bands are drawn as +-b shaded strips.
std::string svg_line_plot(const std::string& title, const std::string& ylabel, const std::vector<double>& t,
                          const std::vector<Series>& series, const std::vector<double>& bands);

}  // namespace vortexform::tools
