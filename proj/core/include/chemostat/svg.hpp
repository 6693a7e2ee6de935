#pragma once

#include <array>
#include <string>
#include <vector>

namespace chemostat {

/// Minimal deterministic SVG phase-plane plotter: axes with ticks, labeled
/// polyline series, optional dashing, simple legend. Output is
/// byte-identical for identical inputs (coordinates printed with fixed
/// precision, no timestamps).
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void add_series(std::string label,
                    std::vector<std::array<double, 2>> points,
                    std::string color, bool dashed = false);

    std::string render(int width = 640, int height = 480) const;
    void write_file(const std::string& path, int width = 640,
                    int height = 480) const;

private:
    struct Series {
        std::string label;
        std::vector<std::array<double, 2>> points;
        std::string color;
        bool dashed;
    };

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Series> series_;
};

}  // namespace chemostat
