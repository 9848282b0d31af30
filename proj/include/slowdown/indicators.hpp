#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "slowdown/series.hpp"

namespace slowdown {

struct WindowConfig {
    int window_days = 410;
    int step_days = 1;

    void validate(std::size_t series_length) const;
};

/// Rolling-window indicator tracks. end_dates[i] is the last day of the
/// window that produced ar1[i]/std[i] (windows are trailing/causal).
struct IndicatorSeries {
    std::string asset;
    std::vector<Date> end_dates;
    std::vector<double> ar1;   // in [-1, 1]
    std::vector<double> std;   // sample std, n-1 denominator
    int clamped_count = 0;     // ar1 values nudged back into [-1, 1]

    std::size_t size() const { return ar1.size(); }
};

struct ThresholdConfig {
    int delta_days = 20;            // lag of the Std difference
    double theta_multiplier = 1.0;  // theta = multiplier * std(residuals)
    int merge_gap_days = 3;         // events closer than this are merged
    bool block_mode = false;        // disjoint delta-day blocks instead of a rolling lag
};

/// Lag-delta differences of the Std track with the dates they are
/// attributed to. In rolling mode (default) value[j] = std[j+delta]-std[j]
/// dated at end_dates[j+delta]; in block mode the track is sampled every
/// delta entries and differenced, dated at each block's last day.
struct DeltaStdSeries {
    std::vector<Date> dates;
    std::vector<double> values;
    std::vector<Date> span_starts;  // first day the value speaks for (block mode: block start)
};

struct WarningEvent {
    std::string asset;
    Date start_date;
    Date end_date;
    double peak_abs_delta_std = 0.0;
    double theta = 0.0;
};

/// Lag-1 autocorrelation of one window:
/// sum_{t<n-1} (x_t - mu)(x_{t+1} - mu) / sum_t (x_t - mu)^2.
/// Throws DegenerateSeriesError for zero-variance windows, and
/// std::invalid_argument for n < 3. Result clamped to [-1, 1]; the
/// unclamped value cannot exceed the bounds by more than rounding error.
double ar1(std::span<const double> window, int* clamped = nullptr);

IndicatorSeries rolling_indicators(const ResidualSeries& r, const WindowConfig& w);

DeltaStdSeries delta_std(const IndicatorSeries& ind, const ThresholdConfig& cfg);

/// Warning events: maximal runs with |delta std| > theta, where
/// theta = theta_multiplier * (sample std of the full residual series).
/// Runs separated by fewer than merge_gap_days days are merged.
std::vector<WarningEvent> detect_warnings(const ResidualSeries& r, const IndicatorSeries& ind,
                                          const ThresholdConfig& cfg);

}  // namespace slowdown
