#include "slowdown/fetch.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "slowdown/csv_io.hpp"
#include "slowdown/errors.hpp"

namespace slowdown {
namespace {

std::string env_or_empty(const char* name) {
    const char* v = std::getenv(name);
    return v ? v : "";
}

std::string cache_path(const FetchConfig& cfg, const std::string& asset, Date from, Date to) {
    return cfg.cache_dir + "/" + asset + "_" + from.to_string() + "_" + to.to_string() + ".csv";
}

bool retryable(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

}  // namespace

FetchConfig fetch_config_from_env() {
    FetchConfig cfg;
    cfg.base_url = env_or_empty("SLOWDOWN_API_BASE");
    cfg.api_key = env_or_empty("SLOWDOWN_API_KEY");
    cfg.cache_dir = env_or_empty("SLOWDOWN_CACHE_DIR");
    return cfg;
}

PriceSeries fetch_remote(const std::string& asset, Date from, Date to, const FetchConfig& cfg) {
    if (!cfg.cache_dir.empty()) {
        const std::string path = cache_path(cfg, asset, from, to);
        if (std::filesystem::exists(path)) {
            return load_csv(path, asset).series;
        }
    }
    if (cfg.base_url.empty()) {
        throw FetchError("no API base URL configured (set SLOWDOWN_API_BASE or --base-url)");
    }

    httplib::Client client(cfg.base_url);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    httplib::Headers headers;
    if (!cfg.api_key.empty()) {
        headers.emplace("X-Api-Key", cfg.api_key);
    }

    PriceSeries series;
    series.asset = asset;

    long page = 1;
    for (int page_count = 0; page_count < 10000; ++page_count) {
        const std::string path = "/v1/prices/" + asset + "?from=" + from.to_string() +
                                 "&to=" + to.to_string() + "&page=" + std::to_string(page);

        httplib::Result res;
        int backoff_ms = cfg.initial_backoff_ms;
        for (int attempt = 1;; ++attempt) {
            res = client.Get(path, headers);
            if (res && !retryable(res->status)) break;
            if (attempt >= cfg.max_attempts) {
                if (res) {
                    throw FetchError("GET " + path + " failed with status " +
                                         std::to_string(res->status) + " after " +
                                         std::to_string(attempt) + " attempts",
                                     res->status);
                }
                throw FetchError("GET " + path + " failed: " + httplib::to_string(res.error()));
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        if (res->status != 200) {
            throw FetchError("GET " + path + " returned status " + std::to_string(res->status),
                             res->status);
        }

        nlohmann::json body;
        try {
            body = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            throw FetchError("GET " + path + ": response is not valid JSON: " + e.what());
        }
        if (!body.is_object() || !body.contains("prices") || !body["prices"].is_array()) {
            throw FetchError("GET " + path + ": response lacks a 'prices' array");
        }
        try {
            for (const auto& row : body["prices"]) {
                series.dates.push_back(Date::parse(row.at("date").get<std::string>()));
                series.prices.push_back(row.at("close").get<double>());
            }
        } catch (const std::exception& e) {
            throw FetchError("GET " + path + ": malformed price row: " + std::string(e.what()));
        }

        const auto next = body.find("next_page");
        if (next == body.end() || next->is_null()) break;
        if (!next->is_number_integer()) {
            throw FetchError("GET " + path + ": 'next_page' must be an integer or null");
        }
        page = next->get<long>();
    }

    if (series.size() == 0) {
        throw FetchError("no prices returned for " + asset + " in " + from.to_string() + ".." +
                         to.to_string());
    }

    // Order rows and enforce the series invariants before anything uses it.
    std::vector<std::size_t> idx(series.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return series.dates[a] < series.dates[b]; });
    PriceSeries sorted;
    sorted.asset = asset;
    for (std::size_t i : idx) {
        sorted.dates.push_back(series.dates[i]);
        sorted.prices.push_back(series.prices[i]);
    }
    sorted.validate();

    if (!cfg.cache_dir.empty()) {
        std::filesystem::create_directories(cfg.cache_dir);
        save_csv(cache_path(cfg, asset, from, to), sorted);
    }
    return sorted;
}

}  // namespace slowdown
