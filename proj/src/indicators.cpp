#include "slowdown/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "slowdown/errors.hpp"
#include "slowdown/preprocess.hpp"

namespace slowdown {

void WindowConfig::validate(std::size_t series_length) const {
    if (window_days < 3) {
        throw std::invalid_argument("window_days must be >= 3, got " + std::to_string(window_days));
    }
    if (step_days < 1) {
        throw std::invalid_argument("step_days must be >= 1, got " + std::to_string(step_days));
    }
    if (static_cast<std::size_t>(window_days) > series_length) {
        throw std::invalid_argument("window of " + std::to_string(window_days) +
                                    " days exceeds series length " + std::to_string(series_length));
    }
}

double ar1(std::span<const double> window, int* clamped) {
    const std::size_t n = window.size();
    if (n < 3) {
        throw std::invalid_argument("ar1: window needs >= 3 points, got " + std::to_string(n));
    }
    double mu = 0.0;
    for (double v : window) mu += v;
    mu /= static_cast<double>(n);

    double den = 0.0;
    double scale = 1.0;
    for (double v : window) {
        const double d = v - mu;
        den += d * d;
        scale = std::max(scale, std::abs(v));
    }
    if (den <= 1e-24 * scale * scale * static_cast<double>(n)) {
        throw DegenerateSeriesError("ar1: zero-variance window");
    }
    double num = 0.0;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        num += (window[t] - mu) * (window[t + 1] - mu);
    }
    double rho = num / den;
    if (rho > 1.0 || rho < -1.0) {
        if (clamped) ++*clamped;
        rho = std::clamp(rho, -1.0, 1.0);
    }
    return rho;
}

IndicatorSeries rolling_indicators(const ResidualSeries& r, const WindowConfig& w) {
    w.validate(r.size());
    const int n = static_cast<int>(r.size());

    IndicatorSeries out;
    out.asset = r.asset;
    for (int e = w.window_days - 1; e < n; e += w.step_days) {
        const std::span<const double> win(r.values.data() + (e - w.window_days + 1),
                                          static_cast<std::size_t>(w.window_days));
        try {
            out.ar1.push_back(ar1(win, &out.clamped_count));
        } catch (const DegenerateSeriesError&) {
            throw DegenerateSeriesError("rolling_indicators: zero-variance window ending " +
                                        r.dates[e].to_string());
        }
        out.std.push_back(summary_stats({win.begin(), win.end()}).std);
        out.end_dates.push_back(r.dates[e]);
    }
    return out;
}

DeltaStdSeries delta_std(const IndicatorSeries& ind, const ThresholdConfig& cfg) {
    if (cfg.delta_days < 1) {
        throw std::invalid_argument("delta_days must be >= 1");
    }
    const int n = static_cast<int>(ind.size());
    const int d = cfg.delta_days;

    DeltaStdSeries out;
    if (!cfg.block_mode) {
        if (n <= d) {
            throw std::invalid_argument("delta_std: track of " + std::to_string(n) +
                                        " points is too short for lag " + std::to_string(d));
        }
        for (int j = d; j < n; ++j) {
            out.values.push_back(ind.std[j] - ind.std[j - d]);
            out.dates.push_back(ind.end_dates[j]);
            out.span_starts.push_back(ind.end_dates[j]);
        }
    } else {
        if (n < 2 * d) {
            throw std::invalid_argument("delta_std: track of " + std::to_string(n) +
                                        " points is too short for two " + std::to_string(d) +
                                        "-day blocks");
        }
        // Sample the track at block ends and difference consecutive blocks.
        for (int k = 1; k * d + d - 1 < n; ++k) {
            const int prev_end = k * d - 1;
            const int cur_end = k * d + d - 1;
            out.values.push_back(ind.std[cur_end] - ind.std[prev_end]);
            out.dates.push_back(ind.end_dates[cur_end]);
            out.span_starts.push_back(ind.end_dates[prev_end + 1]);
        }
    }
    return out;
}

std::vector<WarningEvent> detect_warnings(const ResidualSeries& r, const IndicatorSeries& ind,
                                          const ThresholdConfig& cfg) {
    if (!(cfg.theta_multiplier > 0.0)) {
        throw std::invalid_argument("theta_multiplier must be positive");
    }
    const double theta = cfg.theta_multiplier * summary_stats(r.values).std;
    const DeltaStdSeries ds = delta_std(ind, cfg);

    std::vector<WarningEvent> events;
    const int n = static_cast<int>(ds.values.size());
    int i = 0;
    while (i < n) {
        if (std::abs(ds.values[i]) <= theta) {
            ++i;
            continue;
        }
        WarningEvent ev;
        ev.asset = r.asset;
        ev.theta = theta;
        ev.start_date = ds.span_starts[i];
        ev.end_date = ds.dates[i];
        ev.peak_abs_delta_std = std::abs(ds.values[i]);
        int j = i + 1;
        while (j < n && std::abs(ds.values[j]) > theta) {
            ev.end_date = ds.dates[j];
            ev.peak_abs_delta_std = std::max(ev.peak_abs_delta_std, std::abs(ds.values[j]));
            ++j;
        }
        events.push_back(ev);
        i = j;
    }

    // Merge events separated by fewer than merge_gap_days days.
    std::vector<WarningEvent> merged;
    for (const WarningEvent& ev : events) {
        if (!merged.empty() && ev.start_date - merged.back().end_date < cfg.merge_gap_days) {
            merged.back().end_date = ev.end_date;
            merged.back().peak_abs_delta_std =
                std::max(merged.back().peak_abs_delta_std, ev.peak_abs_delta_std);
        } else {
            merged.push_back(ev);
        }
    }
    return merged;
}

}  // namespace slowdown
