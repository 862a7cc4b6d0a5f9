#pragma once

// Minimal line-plot rendering of a set of curves. No styling contract; the CSV
// files remain the authoritative output.

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace levyexit {

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

inline std::string render_svg(const std::string& title, const std::vector<Curve>& curves) {
    constexpr double width = 640.0, height = 420.0, margin = 50.0;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& c : curves) {
        for (double v : c.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
        for (double v : c.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double v) { return height - margin - (v - ymin) / (ymax - ymin) * (height - 2 * margin); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    char buf[160];
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"24\" font-size=\"14\">", margin);
    out += buf + title + "</text>\n";
    std::snprintf(buf, sizeof buf,
                  "<polyline fill=\"none\" stroke=\"black\" points=\"%g,%g %g,%g %g,%g\"/>\n", margin, margin,
                  margin, height - margin, width - margin, height - margin);
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"11\">%.3g</text>\n", margin,
                  height - margin + 16, xmin);
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"11\">%.3g</text>\n", width - margin - 20,
                  height - margin + 16, xmax);
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"4\" y=\"%g\" font-size=\"11\">%.3g</text>\n", height - margin, ymin);
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"4\" y=\"%g\" font-size=\"11\">%.3g</text>\n", margin, ymax);
    out += buf;

    for (std::size_t k = 0; k < curves.size(); ++k) {
        const char* color = palette[k % std::size(palette)];
        out += std::string("<polyline fill=\"none\" stroke=\"") + color + "\" points=\"";
        for (std::size_t i = 0; i < curves[k].x.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(curves[k].x[i]), py(curves[k].y[i]));
            out += buf;
        }
        out += "\"/>\n";
        std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"11\" fill=\"%s\">", width - margin - 100,
                      margin + 14.0 * static_cast<double>(k + 1), color);
        out += buf + curves[k].label + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace levyexit
