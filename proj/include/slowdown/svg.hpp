#pragma once

#include <string>
#include <vector>

namespace slowdown {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;       // NaN entries break the line
    std::string color = "#1f77b4";
};

struct PlotBand {
    double x0 = 0.0;
    double x1 = 0.0;  // shaded vertical band [x0, x1]
};

struct ErrorBar {
    double x = 0.0;
    double y = 0.0;
    double half_width = 0.0;  // y +/- half_width
};

struct PlotConfig {
    int width = 900;
    int height = 320;
    std::string x_label;
    std::string y_label;
    /// Treat x values as days since 1970-01-01 and label ticks as dates.
    bool x_is_date = false;
};

/// Deterministic standalone SVG line plot. Bands are emitted as
/// <rect class="warning-band"> elements behind the data. No timestamps,
/// no randomness: identical inputs give byte-identical output.
std::string render_svg_plot(const std::string& title, const std::vector<PlotSeries>& series,
                            const std::vector<PlotBand>& bands, const std::vector<ErrorBar>& bars,
                            const PlotConfig& cfg = {});

}  // namespace slowdown
