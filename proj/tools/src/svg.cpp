#include "ptk/app/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace ptk::app {

namespace {

constexpr double width = 800, height = 500;
constexpr double left = 80, right = 170, top = 40, bottom = 60;
constexpr std::array<const char*, 6> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
constexpr double log_floor = 1e-6, log_ceil = 1e6;

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

std::vector<double> nice_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
        out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return out;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
    const double pw = width - left - right, ph = height - top - bottom;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : spec.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            const double y = s.y[i];
            if (!std::isfinite(y) || (spec.log_y && y <= 0)) continue;
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
    if (xmin == xmax) xmin -= 1, xmax += 1;

    double lo, hi;  // y range in plot coordinates (log10 when log_y)
    if (spec.log_y) {
        lo = std::isfinite(ymin) ? std::floor(std::log10(std::max(ymin, log_floor))) : -1;
        hi = std::isfinite(ymax) ? std::ceil(std::log10(std::min(ymax, log_ceil))) : 1;
        if (spec.y_min) lo = std::log10(*spec.y_min);
        if (spec.y_max) hi = std::log10(*spec.y_max);
        if (hi <= lo) hi = lo + 1;
    } else {
        if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
        const double pad = ymax > ymin ? 0.05 * (ymax - ymin) : 1.0;
        lo = spec.y_min.value_or(ymin - pad);
        hi = spec.y_max.value_or(ymax + pad);
        if (hi <= lo) hi = lo + 1;
    }

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double yc) { return top + (hi - yc) / (hi - lo) * ph; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\">\n",
        width, height);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
    out += fmt::format("<text x=\"{:.2f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
                       left + pw / 2, escape(spec.title));

    // ticks and grid
    for (double t : nice_ticks(xmin, xmax)) {
        const double x = px(t);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#dddddd\"/>\n", x, top, top + ph);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{:g}</text>\n",
                           x, top + ph + 16, t);
    }
    std::vector<double> yt;
    if (spec.log_y) {
        const int step = std::max(1, static_cast<int>(std::ceil((hi - lo) / 8)));
        for (int d = static_cast<int>(std::ceil(lo)); d <= static_cast<int>(std::floor(hi)); d += step) yt.push_back(d);
    } else {
        yt = nice_ticks(lo, hi);
    }
    for (double t : yt) {
        const double y = py(t);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#dddddd\"/>\n", left, y, left + pw);
        const std::string label = spec.log_y ? fmt::format("1e{:g}", t) : fmt::format("{:g}", t);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
                           left - 6, y + 4, label);
    }
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n", left, top, pw, ph);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
                       left + pw / 2, height - 16, escape(spec.x_label));
    out += fmt::format("<text x=\"18\" y=\"{0:.2f}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
                       "transform=\"rotate(-90 18 {0:.2f})\">{1}</text>\n",
                       top + ph / 2, escape(spec.y_label));

    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const auto& s = spec.series[k];
        const char* color = palette[k % palette.size()];
        std::vector<std::string> runs;
        std::string run, markers;
        std::size_t run_points = 0;
        auto flush = [&] {
            if (run_points > 1) runs.push_back(run);
            run.clear();
            run_points = 0;
        };
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            double y = s.y[i];
            if (!std::isfinite(s.x[i]) || std::isnan(y)) {
                flush();
                continue;
            }
            double yc;
            if (spec.log_y) yc = y > 0 ? std::log10(y) : -std::numeric_limits<double>::infinity();
            else yc = y;
            int clamped = 0;
            if (yc < lo) yc = lo, clamped = -1;
            if (yc > hi) yc = hi, clamped = 1;
            const double x = px(s.x[i]), yy = py(yc);
            run += fmt::format("{}{:.2f},{:.2f}", run_points ? " " : "", x, yy);
            ++run_points;
            if (clamped > 0)
                markers += fmt::format("<polygon points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" fill=\"{}\"/>\n",
                                       x, yy - 6, x - 3, yy, x + 3, yy, color);
            else if (clamped < 0)
                markers += fmt::format("<polygon points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" fill=\"{}\"/>\n",
                                       x, yy + 6, x - 3, yy, x + 3, yy, color);
        }
        flush();
        for (const auto& r : runs)
            out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", r, color);
        out += markers;
        const double ly = top + 16 + 20 * static_cast<double>(k);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                           left + pw + 12, ly, left + pw + 36, color);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                           left + pw + 42, ly + 4, escape(s.label));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace ptk::app
