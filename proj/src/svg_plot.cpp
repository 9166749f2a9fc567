#include "catdiscord/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "catdiscord/errors.hpp"

namespace catdiscord::io {

namespace {

constexpr const char* kPalette[] = {"#1f4fbf", "#2e9e44", "#8e3fb0", "#d23c2a",
                                    "#e08a00", "#1a9da8", "#666666", "#b5338a"};

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
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

struct Axis {
    double lo;
    double hi;
    bool log;

    double map(double v) const {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double t = log ? std::log10(v) : v;
        return b > a ? (t - a) / (b - a) : 0.5;
    }
};

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0)) return {lo};
    const double raw = span / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
        ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    for (int e = static_cast<int>(std::floor(std::log10(lo)));
         e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
        const double t = std::pow(10.0, e);
        if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) ticks.push_back(t);
    }
    return ticks;
}

}  // namespace

std::string render_svg(const CsvTable& table, const PlotOptions& options) {
    if (options.y_columns.empty()) throw FormatError("no columns selected for plotting");
    const auto x_all = table.numeric_column(options.x_column);
    std::vector<std::vector<double>> ys;
    for (const auto& name : options.y_columns) ys.push_back(table.numeric_column(name));

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < x_all.size(); ++i) {
        if (!std::isfinite(x_all[i]) || (options.log_x && !(x_all[i] > 0))) continue;
        keep.push_back(i);
    }
    if (keep.empty()) throw FormatError("no plottable x values");

    double x_lo = x_all[keep.front()];
    double x_hi = x_lo;
    double y_lo = 0;
    double y_hi = 0;
    bool y_init = false;
    for (std::size_t i : keep) {
        x_lo = std::min(x_lo, x_all[i]);
        x_hi = std::max(x_hi, x_all[i]);
        for (const auto& y : ys) {
            if (!std::isfinite(y[i])) continue;
            if (!y_init) {
                y_lo = y_hi = y[i];
                y_init = true;
            }
            y_lo = std::min(y_lo, y[i]);
            y_hi = std::max(y_hi, y[i]);
        }
    }
    if (y_hi - y_lo < 1e-12) {
        y_lo -= 0.5;
        y_hi += 0.5;
    } else {
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
    }

    const Axis xa{x_lo, x_hi, options.log_x};
    const Axis ya{y_lo, y_hi, false};
    const double left = 70, right = 150, top = 40, bottom = 60;
    const double pw = options.width - left - right;
    const double ph = options.height - top - bottom;
    const auto px = [&](double v) { return left + xa.map(v) * pw; };
    const auto py = [&](double v) { return top + (1 - ya.map(v)) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
        << options.height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"16\">" << escape(options.title)
            << "</text>\n";
    }
    svg << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw)
        << "\" height=\"" << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    const auto x_ticks = options.log_x ? log_ticks(x_lo, x_hi) : linear_ticks(x_lo, x_hi);
    for (double t : x_ticks) {
        const double x = px(t);
        svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(top + ph) << "\" x2=\""
            << fixed(x) << "\" y2=\"" << fixed(top + ph + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(top + ph + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(t) << "</text>\n";
    }
    for (double t : linear_ticks(y_lo, y_hi)) {
        const double y = py(t);
        svg << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(y) << "\" x2=\""
            << fixed(left) << "\" y2=\"" << fixed(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(t) << "</text>\n";
    }
    svg << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(options.height - 15.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << escape(options.x_column) << "</text>\n"
        << "<text x=\"18\" y=\"" << fixed(top + ph / 2) << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 18 "
        << fixed(top + ph / 2) << ")\">bits</text>\n";

    for (std::size_t c = 0; c < ys.size(); ++c) {
        const char* colour = kPalette[c % std::size(kPalette)];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i : keep) {
            if (!std::isfinite(ys[c][i])) continue;
            svg << (first ? "" : " ") << fixed(px(x_all[i])) << ',' << fixed(py(ys[c][i]));
            first = false;
        }
        svg << "\"/>\n";
        const double ly = top + 10 + 20.0 * static_cast<double>(c);
        svg << "<line x1=\"" << fixed(left + pw + 15) << "\" y1=\"" << fixed(ly) << "\" x2=\""
            << fixed(left + pw + 40) << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << colour
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << fixed(left + pw + 46) << "\" y=\"" << fixed(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(options.y_columns[c])
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace catdiscord::io
