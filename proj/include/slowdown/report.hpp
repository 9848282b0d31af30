#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slowdown/indicators.hpp"
#include "slowdown/neutral_model.hpp"
#include "slowdown/preprocess.hpp"
#include "slowdown/series.hpp"
#include "slowdown/stationarity.hpp"

namespace slowdown {

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

struct AnalysisConfig {
    std::vector<std::string> assets;   // ids; data files are <data_dir>/<lowercase id>.csv
    std::string data_dir = "data";
    std::optional<Date> from;
    std::optional<Date> to;
    SmootherConfig smoother{};
    WindowConfig large_window{410, 1};
    WindowConfig small_window{60, 1};
    ThresholdConfig threshold{};
    double alpha = 0.05;
    bool forward_fill = false;
    std::string out_dir = "out";
    std::vector<std::string> formats{"json", "csv", "svg"};
    int jobs = 1;

    /// Deterministic serialization of everything that affects results
    /// (out_dir and jobs excluded: they change neither numbers nor bytes).
    std::string canonical() const;
    std::string hash() const;  // fnv1a64 of canonical(), hex
};

/// Parses a JSON config file with the same field names the report embeds.
AnalysisConfig analysis_config_from_json(const std::string& path);

struct AssetRecord {
    std::string asset;
    bool ok = false;
    std::string failure_reason;  // set when !ok
    std::string input_path;
    std::string input_hash;      // fnv1a64 of the raw file bytes
    int fill_count = 0;
    int n_points = 0;
    ResidualSeries residuals;
    bool has_tests = false;      // adf/kpss fields meaningful
    StationarityReport adf;
    StationarityReport kpss;
    bool stationary = false;
    IndicatorSeries large;
    IndicatorSeries small;
    std::vector<WarningEvent> events;
};

struct AnalysisReport {
    AnalysisConfig config;
    std::string config_hash;
    std::string code_version;
    std::vector<AssetRecord> assets;

    int n_ok() const;
    /// 0: every asset analyzed; 2: some failed; 1: all failed.
    int exit_code() const;
};

/// Steps: load -> detrend -> stationarity gate -> indicators -> warnings,
/// per asset. Assets failing any step get a failure record, never a silent
/// drop. Asset jobs may run in parallel; results are order-independent.
AnalysisReport run_analyze(const AnalysisConfig& cfg);

/// Writes report.json, stationarity.csv, warnings.csv, per-asset indicator
/// CSVs and SVG plots into cfg.out_dir, honouring cfg.formats. Returns the
/// paths written. Identical report -> byte-identical files.
std::vector<std::string> emit_report(const AnalysisReport& report);

struct SimulateOutput {
    Path path;
    std::vector<std::string> files;
};

SimulateOutput run_simulate(const ModelParams& params, const std::string& out_dir,
                            const std::vector<std::string>& formats);

struct SweepOutput {
    SweepResult result;
    std::vector<std::string> files;
};

SweepOutput run_sweep(const SweepSpec& spec, const std::string& out_dir,
                      const std::vector<std::string>& formats);

}  // namespace slowdown
