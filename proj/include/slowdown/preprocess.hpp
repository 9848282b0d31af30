#pragma once

#include <vector>

#include "slowdown/series.hpp"

namespace slowdown {

/// Gaussian smoother settings. bandwidth_days is the kernel standard
/// deviation; the kernel is cut at +/- truncation_multiple * bandwidth and
/// the surviving weights are renormalised to sum to one at every position,
/// so boundaries need no padding.
struct SmootherConfig {
    double bandwidth_days = 30.0;
    double truncation_multiple = 3.0;

    int radius() const;  // floor(truncation_multiple * bandwidth_days)
    void validate() const;
};

struct SummaryStats {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation, n-1 denominator
};

/// y[i] = ln(prices[i] + 1). Zero prices are fine (map to 0); negative or
/// non-finite prices throw std::invalid_argument naming the index.
std::vector<double> log_transform(const PriceSeries& prices);

/// Truncated, per-position-renormalised Gaussian kernel smoother.
/// Affine-equivariant: smooth(a*x + b) == a*smooth(x) + b.
std::vector<double> gaussian_smooth(const std::vector<double>& x, const SmootherConfig& cfg);

/// log-transform, smooth, subtract. Throws DegenerateSeriesError if the
/// residuals have (numerically) zero variance.
ResidualSeries detrend(const PriceSeries& prices, const SmootherConfig& cfg = {});

/// Sample mean and sample std (n-1). Throws std::invalid_argument for n < 2.
SummaryStats summary_stats(const std::vector<double>& xs);

}  // namespace slowdown
