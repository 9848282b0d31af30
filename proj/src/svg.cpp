#include "slowdown/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>

#include "slowdown/dates.hpp"

namespace slowdown {
namespace {

constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 32;
constexpr int kMarginBottom = 44;

void appendf(std::string& out, const char* fmt, ...)
    __attribute__((format(printf, 2, 3)));

void appendf(std::string& out, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    out += buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg_plot(const std::string& title, const std::vector<PlotSeries>& series,
                            const std::vector<PlotBand>& bands, const std::vector<ErrorBar>& bars,
                            const PlotConfig& cfg) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto take = [](double& lo, double& hi, double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    for (const PlotSeries& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            take(xmin, xmax, s.x[i]);
            take(ymin, ymax, s.y[i]);
        }
    }
    for (const ErrorBar& b : bars) {
        take(xmin, xmax, b.x);
        take(ymin, ymax, b.y - b.half_width);
        take(ymin, ymax, b.y + b.half_width);
    }
    if (!std::isfinite(xmin)) {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    // A little headroom so lines do not hug the frame.
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double px0 = kMarginLeft, px1 = cfg.width - kMarginRight;
    const double py0 = cfg.height - kMarginBottom, py1 = kMarginTop;
    auto sx = [&](double x) { return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0); };
    auto sy = [&](double y) { return py0 + (y - ymin) / (ymax - ymin) * (py1 - py0); };

    std::string svg;
    appendf(svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
            "viewBox=\"0 0 %d %d\">\n",
            cfg.width, cfg.height, cfg.width, cfg.height);
    svg += "<style>text{font-family:monospace;font-size:11px;}"
           ".warning-band{fill:#d62728;fill-opacity:0.18;}</style>\n";
    appendf(svg, "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"white\"/>\n", cfg.width,
            cfg.height);
    appendf(svg, "<text x=\"%d\" y=\"18\" font-weight=\"bold\">%s</text>\n", kMarginLeft,
            escape_xml(title).c_str());

    for (const PlotBand& b : bands) {
        const double x0 = std::clamp(std::min(b.x0, b.x1), xmin, xmax);
        const double x1 = std::clamp(std::max(b.x0, b.x1), xmin, xmax);
        appendf(svg,
                "<rect class=\"warning-band\" x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" "
                "height=\"%.2f\"/>\n",
                sx(x0), py1, std::max(1.0, sx(x1) - sx(x0)), py0 - py1);
    }

    // Frame and axis extents.
    appendf(svg,
            "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
            "stroke=\"#333\"/>\n",
            px0, py1, px1 - px0, py0 - py1);
    auto xlabel = [&](double x) {
        if (cfg.x_is_date) return Date(static_cast<std::int32_t>(std::lround(x))).to_string();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", x);
        return std::string(buf);
    };
    appendf(svg, "<text x=\"%.2f\" y=\"%.2f\">%s</text>\n", px0, py0 + 16, xlabel(xmin).c_str());
    appendf(svg, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%s</text>\n", px1, py0 + 16,
            xlabel(xmax).c_str());
    appendf(svg, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.4g</text>\n", px0 - 4,
            py0 + 4, ymin);
    appendf(svg, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.4g</text>\n", px0 - 4,
            py1 + 4, ymax);
    if (!cfg.x_label.empty()) {
        appendf(svg, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%s</text>\n",
                (px0 + px1) / 2, py0 + 32.0, escape_xml(cfg.x_label).c_str());
    }
    if (!cfg.y_label.empty()) {
        appendf(svg,
                "<text x=\"14\" y=\"%.2f\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 14 %.2f)\">%s</text>\n",
                (py0 + py1) / 2, (py0 + py1) / 2, escape_xml(cfg.y_label).c_str());
    }

    int legend_y = kMarginTop + 4;
    for (const PlotSeries& s : series) {
        std::string points;
        bool in_segment = false;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i]) || !std::isfinite(s.x[i])) {
                if (in_segment) {
                    appendf(svg,
                            "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.2\" "
                            "points=\"%s\"/>\n",
                            s.color.c_str(), points.c_str());
                    points.clear();
                    in_segment = false;
                }
                continue;
            }
            appendf(points, "%s%.2f,%.2f", in_segment ? " " : "", sx(s.x[i]), sy(s.y[i]));
            in_segment = true;
        }
        if (in_segment) {
            appendf(svg,
                    "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.2\" points=\"%s\"/>\n",
                    s.color.c_str(), points.c_str());
        }
        if (!s.label.empty()) {
            appendf(svg, "<rect x=\"%.2f\" y=\"%d\" width=\"10\" height=\"10\" fill=\"%s\"/>\n",
                    px1 - 150.0, legend_y - 9, s.color.c_str());
            appendf(svg, "<text x=\"%.2f\" y=\"%d\">%s</text>\n", px1 - 136.0, legend_y,
                    escape_xml(s.label).c_str());
            legend_y += 14;
        }
    }

    for (const ErrorBar& b : bars) {
        const double x = sx(b.x);
        appendf(svg,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#555\" "
                "stroke-width=\"1\"/>\n",
                x, sy(b.y - b.half_width), x, sy(b.y + b.half_width));
        appendf(svg, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"#555\"/>\n", x, sy(b.y));
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace slowdown
