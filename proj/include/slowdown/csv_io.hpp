#pragma once

#include <string>

#include "slowdown/series.hpp"

namespace slowdown {

struct LoadOptions {
    bool forward_fill = false;  // fill calendar gaps with the last close
    int max_fill_days = 3;      // largest gap forward_fill may bridge
};

struct LoadedSeries {
    PriceSeries series;
    int fill_count = 0;  // number of synthesized days
};

/// Reads a `date,close` CSV (ISO dates). Rows are sorted by date; duplicate
/// dates, malformed rows (with line numbers), bad prices, and calendar gaps
/// beyond the policy raise CsvError.
LoadedSeries load_csv(const std::string& path, const std::string& asset_id,
                      const LoadOptions& options = {});

/// Writes a `date,close` CSV with round-trip-exact close values.
void save_csv(const std::string& path, const PriceSeries& series);

}  // namespace slowdown
