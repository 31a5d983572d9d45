// Copyright (C) 2026 The risho authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "risho/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

namespace risho::cli {

namespace {

constexpr double kPanelW = 640.0;
constexpr double kPanelH = 300.0;
constexpr double kMarginL = 80.0;
constexpr double kMarginR = 170.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 50.0;

const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string label_of(const Cell &c) {
    if (const auto *d = std::get_if<double>(&c)) return num(*d);
    if (const auto *i = std::get_if<std::int64_t>(&c)) return num(static_cast<double>(*i));
    return std::get<std::string>(c);
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double map(double v, double a, double b) const {
        const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
        return a + t * (b - a);
    }
    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double e = std::ceil(lo); e <= std::floor(hi) + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
            if (out.size() < 2) out = {std::pow(10.0, lo), std::pow(10.0, hi)};
            return out;
        }
        for (int i = 0; i <= 4; ++i) out.push_back(lo + (hi - lo) * i / 4.0);
        return out;
    }
};

Axis make_axis(const std::vector<double> &v, bool log) {
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double x : v) {
        if (log && !(x > 0.0)) continue;
        const double t = log ? std::log10(x) : x;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
        const double pad = log ? 0.5 : (std::abs(lo) > 0 ? 0.05 * std::abs(lo) : 0.5);
        lo -= pad;
        hi += pad;
    }
    a.lo = lo;
    a.hi = hi;
    return a;
}

std::string header(double w, double h, const std::string &title) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(w) + "\" height=\"" + px(h) +
           "\" viewBox=\"0 0 " + px(w) + " " + px(h) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + px(w / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) +
           "</text>\n";
    return out;
}

void frame(std::string &out, double x0, double y0, double x1, double y1, const Axis &ax, const Axis &ay,
           const std::string &xl, const std::string &yl) {
    out += "<rect x=\"" + px(x0) + "\" y=\"" + px(y0) + "\" width=\"" + px(x1 - x0) + "\" height=\"" + px(y1 - y0) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        const double x = ax.map(t, x0, x1);
        out += "<line x1=\"" + px(x) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x) + "\" y2=\"" + px(y1 + 4) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + px(x) + "\" y=\"" + px(y1 + 16) + "\" text-anchor=\"middle\">" + num(t) + "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = ay.map(t, y1, y0);
        out += "<line x1=\"" + px(x0 - 4) + "\" y1=\"" + px(y) + "\" x2=\"" + px(x0) + "\" y2=\"" + px(y) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + px(x0 - 6) + "\" y=\"" + px(y + 4) + "\" text-anchor=\"end\">" + num(t) + "</text>\n";
    }
    out += "<text x=\"" + px((x0 + x1) / 2) + "\" y=\"" + px(y1 + 34) + "\" text-anchor=\"middle\">" + escape(xl) +
           "</text>\n";
    out += "<text x=\"" + px(x0 - 60) + "\" y=\"" + px((y0 + y1) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 " +
           px(x0 - 60) + " " + px((y0 + y1) / 2) + ")\">" + escape(yl) + "</text>\n";
}

} // namespace

std::string render_line_plot(const ResultTable &table, const LinePlotSpec &spec) {
    if (spec.ys.empty()) throw std::invalid_argument("line plot needs at least one y column");
    (void)table.column_index(spec.x);
    std::vector<std::size_t> yi;
    for (const auto &y : spec.ys) yi.push_back(table.column_index(y));
    const bool has_series = !spec.series.empty();
    const bool has_panel = !spec.panel.empty();
    const std::size_t si = has_series ? table.column_index(spec.series) : 0;
    const std::size_t pi = has_panel ? table.column_index(spec.panel) : 0;

    // panels and series in first-appearance order
    std::vector<std::string> panels;
    std::vector<std::string> series;
    for (const auto &row : table.rows) {
        const std::string p = has_panel ? label_of(row[pi]) : "";
        if (std::find(panels.begin(), panels.end(), p) == panels.end()) panels.push_back(p);
        const std::string s = has_series ? label_of(row[si]) : "";
        if (std::find(series.begin(), series.end(), s) == series.end()) series.push_back(s);
    }
    if (panels.empty()) panels.push_back("");

    const double width = kMarginL + kPanelW + kMarginR;
    const double height = kMarginT + static_cast<double>(panels.size()) * (kPanelH + kMarginB + 20.0);
    std::string out = header(width, height, spec.title);

    for (std::size_t p = 0; p < panels.size(); ++p) {
        std::vector<double> xs, ys;
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            if (has_panel && label_of(table.rows[r][pi]) != panels[p]) continue;
            xs.push_back(table.number(r, spec.x));
            for (const auto &y : spec.ys) ys.push_back(table.number(r, y));
        }
        const Axis ax = make_axis(xs, spec.log_x);
        const Axis ay = make_axis(ys, spec.log_y);
        const double y0 = kMarginT + static_cast<double>(p) * (kPanelH + kMarginB + 20.0) + 20.0;
        const double y1 = y0 + kPanelH;
        const double x0 = kMarginL, x1 = kMarginL + kPanelW;
        if (has_panel)
            out += "<text x=\"" + px(x0) + "\" y=\"" + px(y0 - 6) + "\">" + escape(spec.panel + " = " + panels[p]) +
                   "</text>\n";
        frame(out, x0, y0, x1, y1, ax, ay, spec.x_label.empty() ? spec.x : spec.x_label,
              spec.y_label.empty() ? spec.ys.front() : spec.y_label);

        std::size_t color = 0;
        double legend_y = y0 + 12;
        for (std::size_t k = 0; k < spec.ys.size(); ++k) {
            for (const auto &s : series) {
                std::string points;
                for (std::size_t r = 0; r < table.rows.size(); ++r) {
                    const auto &row = table.rows[r];
                    if (has_panel && label_of(row[pi]) != panels[p]) continue;
                    if (has_series && label_of(row[si]) != s) continue;
                    const double xv = table.number(r, spec.x);
                    const double yv = table.number(r, spec.ys[k]);
                    if ((spec.log_x && !(xv > 0.0)) || (spec.log_y && !(yv > 0.0))) continue;
                    points += px(ax.map(xv, x0, x1)) + "," + px(ay.map(yv, y1, y0)) + " ";
                }
                const char *c = kPalette[color % (sizeof kPalette / sizeof kPalette[0])];
                ++color;
                if (points.empty()) continue;
                points.pop_back();
                out += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"1.5\" points=\"" +
                       points + "\"/>\n";
                std::string name = spec.ys.size() > 1 ? spec.ys[k] : "";
                if (has_series) name += (name.empty() ? "" : " ") + spec.series + "=" + s;
                if (!name.empty()) {
                    out += "<line x1=\"" + px(x1 + 10) + "\" y1=\"" + px(legend_y - 4) + "\" x2=\"" + px(x1 + 30) +
                           "\" y2=\"" + px(legend_y - 4) + "\" stroke=\"" + c + "\" stroke-width=\"2\"/>\n";
                    out += "<text x=\"" + px(x1 + 34) + "\" y=\"" + px(legend_y) + "\">" + escape(name) + "</text>\n";
                    legend_y += 14;
                }
            }
        }
    }
    out += "</svg>\n";
    return out;
}

std::string render_heatmap(const ResultTable &table, const HeatmapSpec &spec) {
    std::vector<double> xs, ys;
    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double x = table.number(r, spec.x), y = table.number(r, spec.y), v = table.number(r, spec.value);
        if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
        if (std::find(ys.begin(), ys.end(), y) == ys.end()) ys.push_back(y);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (xs.empty()) throw std::invalid_argument("heatmap needs at least one row");
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (!(vmax > vmin)) vmax = vmin + 1.0;

    const double width = kMarginL + kPanelW + kMarginR;
    const double height = kMarginT + 20.0 + kPanelH + kMarginB;
    std::string out = header(width, height, spec.title);
    const double x0 = kMarginL, x1 = kMarginL + kPanelW, y0 = kMarginT + 20.0, y1 = y0 + kPanelH;
    const double cw = (x1 - x0) / static_cast<double>(xs.size());
    const double ch = (y1 - y0) / static_cast<double>(ys.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double x = table.number(r, spec.x), y = table.number(r, spec.y), v = table.number(r, spec.value);
        const auto ix = static_cast<double>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
        const auto iy = static_cast<double>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
        const double t = (v - vmin) / (vmax - vmin);
        const int red = static_cast<int>(std::lround(255.0 * t));
        const int blue = static_cast<int>(std::lround(255.0 * (1.0 - t)));
        const int green = static_cast<int>(std::lround(255.0 * (1.0 - std::abs(2.0 * t - 1.0)) * 0.8));
        char color[8];
        std::snprintf(color, sizeof color, "#%02x%02x%02x", red, green, blue);
        out += "<rect x=\"" + px(x0 + ix * cw) + "\" y=\"" + px(y1 - (iy + 1) * ch) + "\" width=\"" + px(cw + 0.3) +
               "\" height=\"" + px(ch + 0.3) + "\" fill=\"" + color + "\"/>\n";
    }
    Axis ax = make_axis(xs, false), ay = make_axis(ys, false);
    frame(out, x0, y0, x1, y1, ax, ay, spec.x_label.empty() ? spec.x : spec.x_label,
          spec.y_label.empty() ? spec.y : spec.y_label);
    out += "<text x=\"" + px(x1 + 10) + "\" y=\"" + px(y0 + 12) + "\">" + escape(spec.value) + "</text>\n";
    out += "<text x=\"" + px(x1 + 10) + "\" y=\"" + px(y0 + 28) + "\" fill=\"#ff0000\">max " + num(vmax) + "</text>\n";
    out += "<text x=\"" + px(x1 + 10) + "\" y=\"" + px(y0 + 44) + "\" fill=\"#0000ff\">min " + num(vmin) + "</text>\n";
    out += "</svg>\n";
    return out;
}

} // namespace risho::cli
