// Copyright 2026 The qfi-witness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qfiw_cli {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v, const char *pattern = "%.6g") {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, pattern, v);
    return buffer;
}

std::string escape(const std::string &text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

struct Axis {
    double lo;
    double hi;
    bool log;

    double transform(double v) const { return log ? std::log10(v) : v; }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0) {
                out.push_back(std::pow(10.0, e));
            }
            return out;
        }
        const double raw = (hi - lo) / 6.0;
        const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
        double step = magnitude;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            if (m * magnitude >= raw) {
                step = m * magnitude;
                break;
            }
        }
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
            out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
        }
        return out;
    }
};

Axis fit_axis(const std::vector<double> &values, bool log) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
        const double t = log ? std::log10(v) : v;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        const double pad = log ? 0.5 : std::max(1e-12, 0.5 * std::abs(lo));
        lo -= pad;
        hi += pad;
    } else if (!log) {
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    return {lo, hi, log};
}

}  // namespace

std::string render_svg(const LineChart &chart) {
    std::vector<Series> shown;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &s : chart.series) {
        Series kept{s.label, {}, s.dashed};
        for (const auto &[x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y) || (chart.log_x && x <= 0.0) || (chart.log_y && y <= 0.0)) {
                continue;
            }
            kept.points.emplace_back(x, y);
            xs.push_back(x);
            ys.push_back(y);
        }
        shown.push_back(std::move(kept));
    }
    const Axis ax = fit_axis(xs, chart.log_x);
    const Axis ay = fit_axis(ys, chart.log_y);
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (ax.transform(x) - ax.lo) / (ax.hi - ax.lo) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - (ay.transform(y) - ay.lo) / (ay.hi - ay.lo) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(chart.title) << "</text>\n";

    for (double t : ax.ticks()) {
        const double x = px(t);
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << kTop << "\" x2=\"" << fmt(x) << "\" y2=\"" << kTop + plot_h
            << "\" stroke=\"#e0e0e0\"/>\n"
            << "<text x=\"" << fmt(x) << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">"
            << fmt(t, "%g") << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = py(t);
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(y) << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#e0e0e0\"/>\n"
            << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">" << fmt(t, "%g")
            << "</text>\n";
    }
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">"
        << escape(chart.x_label) << (chart.log_x ? " (log)" : "") << "</text>\n"
        << "<text transform=\"translate(20 " << kTop + plot_h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(chart.y_label) << (chart.log_y ? " (log)" : "") << "</text>\n";

    for (size_t i = 0; i < shown.size(); ++i) {
        const auto &s = shown[i];
        const char *color = kPalette[i % std::size(kPalette)];
        if (!s.points.empty()) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\""
                << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
            for (size_t k = 0; k < s.points.size(); ++k) {
                svg << (k ? " " : "") << fmt(px(s.points[k].first)) << ',' << fmt(py(s.points[k].second));
            }
            svg << "\"/>\n";
        }
        const double ly = kTop + 12 + 18 * static_cast<double>(i);
        const double lx = kLeft + plot_w + 14;
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly << "\" stroke=\""
            << color << "\" stroke-width=\"1.8\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
            << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qfiw_cli
