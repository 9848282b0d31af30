#pragma once

#include <string>
#include <vector>

#include "slowdown/dates.hpp"

namespace slowdown {

/// Daily close prices for one asset. Once validate() has passed, dates are
/// strictly increasing with no gaps and prices are finite and non-negative.
struct PriceSeries {
    std::string asset;
    std::vector<Date> dates;
    std::vector<double> prices;

    std::size_t size() const { return prices.size(); }

    /// Throws std::invalid_argument on size mismatch, non-finite or negative
    /// prices, non-increasing dates, or calendar gaps. Messages carry the
    /// offending index so callers can point at the bad row.
    void validate() const;
};

/// Output of the detrending stage: residuals aligned with the input dates,
/// plus the removed trend for diagnostics. mean/std are the sample mean and
/// sample standard deviation (n-1) of values, populated by detrend().
struct ResidualSeries {
    std::string asset;
    std::vector<Date> dates;
    std::vector<double> values;      // log1p(price) - trend
    std::vector<double> trend;       // smoothed log-price, same length
    std::vector<double> log_price;   // log1p of the raw closes
    double mean = 0.0;
    double std = 0.0;

    std::size_t size() const { return values.size(); }
};

}  // namespace slowdown
