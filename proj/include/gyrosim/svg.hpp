#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gyrosim {

/// One polyline of a plot.
struct PlotSeries {
    std::string label;
    std::string color = "#1f6fb2";
    std::vector<double> x;
    std::vector<double> y;
};

/**
 * Static SVG line plot: axes box, a handful of ticks, legend, one polyline
 * per series. Series longer than max_points are decimated by striding, which
 * is plenty for figure-shaped output and keeps files small.
 */
inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           const std::vector<PlotSeries>& series,
                           std::size_t max_points = 2000) {
    if (series.empty())
        throw std::invalid_argument("write_svg_plot: no series");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw std::invalid_argument("write_svg_plot: bad series '" + s.label + "'");
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmax > xmin)) {
        xmax = xmin + 1.0;
    }
    if (!(ymax > ymin)) {
        ymax = ymin + 1.0;
        ymin -= 1.0;
    }
    // a little vertical headroom
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const int W = 960, H = 440;
    const int ml = 70, mr = 20, mt = 34, mb = 46;
    const double pw = W - ml - mr, ph = H - mt - mb;
    const auto sx = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * pw; };
    const auto sy = [&](double v) { return mt + (ymax - v) / (ymax - ymin) * ph; };

    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    char buf[160];
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << H / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " << H / 2 << ")\">" << y_label << "</text>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%d\" x2=\"%.1f\" y2=\"%d\" "
                      "stroke=\"#ccc\"/>\n",
                      sx(xv), mt, sx(xv), mt + static_cast<int>(ph));
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%d\" text-anchor=\"middle\" "
                      "font-family=\"sans-serif\" font-size=\"10\">%.3g</text>\n",
                      sx(xv), H - mb + 16, xv);
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%d\" y1=\"%.1f\" x2=\"%d\" y2=\"%.1f\" "
                      "stroke=\"#ccc\"/>\n",
                      ml, sy(yv), ml + static_cast<int>(pw), sy(yv));
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%.1f\" text-anchor=\"end\" "
                      "font-family=\"sans-serif\" font-size=\"10\">%.3g</text>\n",
                      ml - 6, sy(yv) + 3, yv);
        out << buf;
    }

    for (const auto& s : series) {
        const std::size_t n = s.x.size();
        const std::size_t stride = std::max<std::size_t>(1, n / max_points);
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < n; i += stride) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(s.x[i]), sy(s.y[i]));
            out << buf;
        }
        if ((n - 1) % stride != 0) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f", sx(s.x[n - 1]), sy(s.y[n - 1]));
            out << buf;
        }
        out << "\"/>\n";
    }

    int ly = mt + 16;
    for (const auto& s : series) {
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"%s\" "
                      "stroke-width=\"2\"/>\n",
                      ml + 10, ly - 4, ml + 34, ly - 4, s.color.c_str());
        out << buf;
        out << "<text x=\"" << ml + 40 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
            << "</text>\n";
        ly += 16;
    }
    out << "</svg>\n";
}

}  // namespace gyrosim
