#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "sqzrot/errors.hpp"

namespace sqzrot {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Round a raw interval to a 1/2/5 decade so tick labels stay readable.
inline double nice_step(double span, int target_ticks) {
    double raw = span / std::max(1, target_ticks);
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double step = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
    return step * mag;
}

} // namespace detail

// Standalone vector plot of one or more sampled curves. No display server or
// font metrics needed; everything is plain SVG primitives.
inline std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                                 const std::string& ylabel,
                                 const std::vector<SvgSeries>& series) {
    if (series.empty())
        throw argument_error("cli-io", "plot needs at least one series");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw argument_error("cli-io", "plot series '" + s.label + "' is empty or ragged");
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) {
        ymax = ymin + 1.0;
        ymin -= 1.0;
    }
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double width = 720, height = 480;
    const double left = 72, right = 24, top = 40, bottom = 56;
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << title << "</text>\n";

    double xstep = detail::nice_step(xmax - xmin, 7);
    double x0 = std::ceil(xmin / xstep) * xstep;
    for (double x = x0; x <= xmax + 1e-9 * xstep; x += xstep) {
        double px = sx(x);
        out << "<line x1=\"" << detail::svg_num(px) << "\" y1=\"" << top << "\" x2=\""
            << detail::svg_num(px) << "\" y2=\"" << top + ph
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << detail::svg_num(px) << "\" y=\"" << top + ph + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << detail::svg_num(x) << "</text>\n";
    }
    double ystep = detail::nice_step(ymax - ymin, 6);
    double y0 = std::ceil(ymin / ystep) * ystep;
    for (double y = y0; y <= ymax + 1e-9 * ystep; y += ystep) {
        double py = sy(y);
        out << "<line x1=\"" << left << "\" y1=\"" << detail::svg_num(py) << "\" x2=\""
            << left + pw << "\" y2=\"" << detail::svg_num(py)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << detail::svg_num(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << detail::svg_num(y) << "</text>\n";
    }
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) out << ' ';
            out << detail::svg_num(sx(s.x[i])) << ',' << detail::svg_num(sy(s.y[i]));
        }
        out << "\"/>\n";
    }

    double ly = top + 16;
    for (const auto& s : series) {
        out << "<line x1=\"" << left + pw - 150 << "\" y1=\"" << ly - 4 << "\" x2=\""
            << left + pw - 122 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << left + pw - 116 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        ly += 16;
    }

    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
        << "</text>\n"
        << "<text x=\"18\" y=\"" << top + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
        << top + ph / 2 << ")\">" << ylabel << "</text>\n"
        << "</svg>\n";
    return out.str();
}

} // namespace sqzrot
