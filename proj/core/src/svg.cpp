#include "chemostat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace chemostat {

namespace {

std::string fixed(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Round a span to a pleasant tick spacing (1/2/5 ladder).
double tick_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgPlot::add_series(std::string label,
                         std::vector<std::array<double, 2>> points,
                         std::string color, bool dashed) {
    series_.push_back(
        {std::move(label), std::move(points), std::move(color), dashed});
}

std::string SvgPlot::render(int width, int height) const {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : series_) {
        for (const auto& pt : s.points) {
            xmin = std::min(xmin, pt[0]);
            xmax = std::max(xmax, pt[0]);
            ymin = std::min(ymin, pt[1]);
            ymax = std::max(ymax, pt[1]);
        }
    }
    if (!(xmin <= xmax)) {
        xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0;
    }
    if (xmax == xmin) { xmax = xmin + 1.0; }
    if (ymax == ymin) { ymax = ymin + 1.0; }
    const double xpad = 0.05 * (xmax - xmin);
    const double ypad = 0.05 * (ymax - ymin);
    xmin -= xpad; xmax += xpad;
    ymin -= ypad; ymax += ypad;

    const double ml = 60.0, mr = 20.0, mt = 40.0, mb = 50.0;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" viewBox=\"0 0 " + std::to_string(width) + " " +
           std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fixed(ml + pw / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "font-family=\"sans-serif\">" + title_ + "</text>\n";

    // Axes box and ticks.
    svg += "<rect x=\"" + fixed(ml) + "\" y=\"" + fixed(mt) + "\" width=\"" +
           fixed(pw) + "\" height=\"" + fixed(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    const double xstep = tick_step(xmax - xmin);
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-12 * xstep;
         x += xstep) {
        svg += "<line x1=\"" + fixed(px(x)) + "\" y1=\"" + fixed(mt + ph) +
               "\" x2=\"" + fixed(px(x)) + "\" y2=\"" + fixed(mt + ph + 5) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed(px(x)) + "\" y=\"" + fixed(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\" "
               "font-family=\"sans-serif\">" + tick_label(x) + "</text>\n";
    }
    const double ystep = tick_step(ymax - ymin);
    for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-12 * ystep;
         y += ystep) {
        svg += "<line x1=\"" + fixed(ml - 5) + "\" y1=\"" + fixed(py(y)) +
               "\" x2=\"" + fixed(ml) + "\" y2=\"" + fixed(py(y)) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed(ml - 8) + "\" y=\"" + fixed(py(y) + 4) +
               "\" text-anchor=\"end\" font-size=\"11\" "
               "font-family=\"sans-serif\">" + tick_label(y) + "</text>\n";
    }
    svg += "<text x=\"" + fixed(ml + pw / 2) + "\" y=\"" +
           fixed(height - 12.0) +
           "\" text-anchor=\"middle\" font-size=\"13\" "
           "font-family=\"sans-serif\">" + x_label_ + "</text>\n";
    svg += "<text x=\"16\" y=\"" + fixed(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" "
           "font-family=\"sans-serif\" transform=\"rotate(-90 16 " +
           fixed(mt + ph / 2) + ")\">" + y_label_ + "</text>\n";

    for (const auto& s : series_) {
        if (s.points.empty()) continue;
        svg += "<polyline fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1\"";
        if (s.dashed) {
            svg += " stroke-dasharray=\"6,4\"";
        }
        svg += " points=\"";
        for (const auto& pt : s.points) {
            svg += fixed(px(pt[0]));
            svg.push_back(',');
            svg += fixed(py(pt[1]));
            svg.push_back(' ');
        }
        if (svg.back() == ' ') svg.pop_back();
        svg += "\"/>\n";
    }

    // Legend: unique labels only, top-right corner of the plot box.
    double ly = mt + 16.0;
    std::vector<std::string> seen;
    for (const auto& s : series_) {
        if (s.label.empty() ||
            std::find(seen.begin(), seen.end(), s.label) != seen.end()) {
            continue;
        }
        seen.push_back(s.label);
        const double lx = ml + pw - 150.0;
        svg += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly - 4) +
               "\" x2=\"" + fixed(lx + 24) + "\" y2=\"" + fixed(ly - 4) +
               "\" stroke=\"" + s.color + "\"";
        if (s.dashed) {
            svg += " stroke-dasharray=\"6,4\"";
        }
        svg += "/>\n";
        svg += "<text x=\"" + fixed(lx + 30) + "\" y=\"" + fixed(ly) +
               "\" font-size=\"11\" font-family=\"sans-serif\">" + s.label +
               "</text>\n";
        ly += 16.0;
    }

    svg += "</svg>\n";
    return svg;
}

void SvgPlot::write_file(const std::string& path, int width, int height) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write SVG file: " + path);
    }
    out << render(width, height);
}

}  // namespace chemostat
