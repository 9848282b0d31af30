#pragma once

#include <string>

#include "slowdown/series.hpp"

namespace slowdown {

struct FetchConfig {
    std::string base_url;            // e.g. "http://localhost:8080"
    std::string api_key;             // sent as X-Api-Key when non-empty
    std::string cache_dir;           // empty disables the disk cache
    int max_attempts = 5;            // per page, for 429/5xx/connection errors
    int initial_backoff_ms = 250;    // doubles on every retry
};

/// Reads SLOWDOWN_API_BASE, SLOWDOWN_API_KEY, SLOWDOWN_CACHE_DIR.
FetchConfig fetch_config_from_env();

/// Paged GET of {base}/v1/prices/{asset}?from=...&to=...&page=N, where each
/// page is {"asset": ..., "prices": [{"date": ..., "close": ...}], and
/// "next_page" is a number or null. Successful results are cached as CSV in
/// cache_dir keyed by (asset, range); a cache hit makes no network calls.
/// Throws FetchError on HTTP failure (status surfaced), schema drift, or
/// retry exhaustion.
PriceSeries fetch_remote(const std::string& asset, Date from, Date to, const FetchConfig& cfg);

}  // namespace slowdown
