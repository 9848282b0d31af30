#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "slowdown/csv_io.hpp"
#include "slowdown/report.hpp"
#include "slowdown/version.hpp"

namespace slowdown {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    std::ostringstream ss;
    ss << in.rdbuf();
    return hex64(fnv1a64(ss.str()));
}

void analyze_one(const AnalysisConfig& cfg, const std::string& asset, AssetRecord& rec) {
    rec.asset = asset;
    rec.input_path = cfg.data_dir + "/" + lower(asset) + ".csv";
    try {
        rec.input_hash = file_hash(rec.input_path);
        LoadOptions load_opts;
        load_opts.forward_fill = cfg.forward_fill;
        LoadedSeries loaded = load_csv(rec.input_path, asset, load_opts);
        rec.fill_count = loaded.fill_count;

        PriceSeries series = std::move(loaded.series);
        if (cfg.from || cfg.to) {
            PriceSeries sliced;
            sliced.asset = series.asset;
            for (std::size_t i = 0; i < series.size(); ++i) {
                if (cfg.from && series.dates[i] < *cfg.from) continue;
                if (cfg.to && series.dates[i] > *cfg.to) continue;
                sliced.dates.push_back(series.dates[i]);
                sliced.prices.push_back(series.prices[i]);
            }
            if (sliced.size() == 0) {
                throw std::invalid_argument("no data in the requested date range");
            }
            series = std::move(sliced);
        }
        rec.n_points = static_cast<int>(series.size());

        rec.residuals = detrend(series, cfg.smoother);

        rec.adf = adf_test(rec.residuals.values, -1, cfg.alpha);
        rec.kpss = kpss_test(rec.residuals.values, -1, cfg.alpha);
        rec.has_tests = true;
        rec.stationary = is_stationary(rec.adf, rec.kpss);
        if (!rec.stationary) {
            rec.failure_reason = "skipped: non-stationary residuals (ADF p=" +
                                 std::to_string(rec.adf.p_value) +
                                 ", KPSS p=" + std::to_string(rec.kpss.p_value) + ")";
            return;
        }

        rec.large = rolling_indicators(rec.residuals, cfg.large_window);
        rec.small = rolling_indicators(rec.residuals, cfg.small_window);
        rec.events = detect_warnings(rec.residuals, rec.small, cfg.threshold);
        rec.ok = true;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.failure_reason = e.what();
    }
}

}  // namespace

std::string AnalysisConfig::canonical() const {
    std::ostringstream ss;
    ss << "assets=";
    for (std::size_t i = 0; i < assets.size(); ++i) ss << (i ? "," : "") << assets[i];
    ss << ";data_dir=" << data_dir;
    ss << ";from=" << (from ? from->to_string() : "-");
    ss << ";to=" << (to ? to->to_string() : "-");
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  ";bandwidth=%.17g;truncation=%.17g;large=%d;small=%d;delta=%d;theta=%.17g"
                  ";merge_gap=%d;block=%d;alpha=%.17g;forward_fill=%d",
                  smoother.bandwidth_days, smoother.truncation_multiple,
                  large_window.window_days, small_window.window_days, threshold.delta_days,
                  threshold.theta_multiplier, threshold.merge_gap_days,
                  threshold.block_mode ? 1 : 0, alpha, forward_fill ? 1 : 0);
    ss << buf << ";formats=";
    for (std::size_t i = 0; i < formats.size(); ++i) ss << (i ? "," : "") << formats[i];
    return ss.str();
}

std::string AnalysisConfig::hash() const { return hex64(fnv1a64(canonical())); }

AnalysisConfig analysis_config_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config '" + path + "': " + e.what());
    }

    AnalysisConfig cfg;
    if (j.contains("assets")) cfg.assets = j["assets"].get<std::vector<std::string>>();
    if (j.contains("data_dir")) cfg.data_dir = j["data_dir"].get<std::string>();
    if (j.contains("from")) cfg.from = Date::parse(j["from"].get<std::string>());
    if (j.contains("to")) cfg.to = Date::parse(j["to"].get<std::string>());
    if (j.contains("bandwidth_days")) cfg.smoother.bandwidth_days = j["bandwidth_days"].get<double>();
    if (j.contains("truncation_multiple")) {
        cfg.smoother.truncation_multiple = j["truncation_multiple"].get<double>();
    }
    if (j.contains("large_window_days")) {
        cfg.large_window.window_days = j["large_window_days"].get<int>();
    }
    if (j.contains("small_window_days")) {
        cfg.small_window.window_days = j["small_window_days"].get<int>();
    }
    if (j.contains("delta_days")) cfg.threshold.delta_days = j["delta_days"].get<int>();
    if (j.contains("theta_multiplier")) {
        cfg.threshold.theta_multiplier = j["theta_multiplier"].get<double>();
    }
    if (j.contains("merge_gap_days")) cfg.threshold.merge_gap_days = j["merge_gap_days"].get<int>();
    if (j.contains("block_mode")) cfg.threshold.block_mode = j["block_mode"].get<bool>();
    if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
    if (j.contains("forward_fill")) cfg.forward_fill = j["forward_fill"].get<bool>();
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("formats")) cfg.formats = j["formats"].get<std::vector<std::string>>();
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
    return cfg;
}

int AnalysisReport::n_ok() const {
    int n = 0;
    for (const AssetRecord& r : assets) n += r.ok ? 1 : 0;
    return n;
}

int AnalysisReport::exit_code() const {
    const int ok = n_ok();
    if (ok == static_cast<int>(assets.size()) && ok > 0) return 0;
    return ok > 0 ? 2 : 1;
}

AnalysisReport run_analyze(const AnalysisConfig& cfg) {
    if (cfg.assets.empty()) {
        throw std::invalid_argument("run_analyze: no assets configured");
    }

    AnalysisReport report;
    report.config = cfg;
    report.config_hash = cfg.hash();
    report.code_version = kVersion;
    report.assets.resize(cfg.assets.size());

    const int n = static_cast<int>(cfg.assets.size());
    const int jobs = std::max(1, std::min(cfg.jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) analyze_one(cfg, cfg.assets[i], report.assets[i]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&, w] {
                for (int i = w; i < n; i += jobs) {
                    analyze_one(cfg, cfg.assets[i], report.assets[i]);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return report;
}

}  // namespace slowdown
