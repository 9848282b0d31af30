// slowdown: early-warning indicator pipeline for price-like series plus the
// bistable neutral model (simulate / parameter sweeps).

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slowdown/csv_io.hpp"
#include "slowdown/fetch.hpp"
#include "slowdown/report.hpp"
#include "slowdown/version.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// "a:b:n" -> n evenly spaced points from a to b; a single number -> {a}.
std::vector<double> parse_grid(const std::string& s) {
    const std::vector<std::string> parts = [&] {
        std::vector<std::string> p;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ':')) p.push_back(item);
        return p;
    }();
    if (parts.size() == 1) {
        return {std::stod(parts[0])};
    }
    if (parts.size() != 3) {
        throw CLI::ValidationError("--grid", "expected 'a:b:n' or a single value");
    }
    const double a = std::stod(parts[0]);
    const double b = std::stod(parts[1]);
    const int n = std::stoi(parts[2]);
    if (n < 1) throw CLI::ValidationError("--grid", "n must be >= 1");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
    }
    return grid;
}

int run_analyze_cmd(const slowdown::AnalysisConfig& cfg) {
    const slowdown::AnalysisReport report = slowdown::run_analyze(cfg);
    const std::vector<std::string> files = slowdown::emit_report(report);
    for (const slowdown::AssetRecord& rec : report.assets) {
        if (rec.ok) {
            std::printf("%s: ok, residual std %.6g, %zu warning event(s)\n", rec.asset.c_str(),
                        rec.residuals.std, rec.events.size());
        } else {
            std::printf("%s: FAILED - %s\n", rec.asset.c_str(), rec.failure_reason.c_str());
        }
    }
    std::printf("wrote %zu file(s) to %s\n", files.size(), report.config.out_dir.c_str());
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"early-warning signals of critical and stochastic transitions in price series"};
    app.set_version_flag("--version", slowdown::kVersion);
    app.require_subcommand(1);

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "run the detrend/test/indicator pipeline");
    std::string config_path;
    std::string assets_csv;
    std::string from_str, to_str;
    std::string windows_csv;
    std::string formats_csv;
    slowdown::AnalysisConfig acfg;
    auto* opt_config = analyze->add_option("--config", config_path, "JSON config file");
    auto* opt_assets = analyze->add_option("--assets", assets_csv, "comma-separated asset ids");
    auto* opt_datadir = analyze->add_option("--data-dir", acfg.data_dir, "directory with <asset>.csv files");
    auto* opt_from = analyze->add_option("--from", from_str, "first date (YYYY-MM-DD)");
    auto* opt_to = analyze->add_option("--to", to_str, "last date (YYYY-MM-DD)");
    auto* opt_bw = analyze->add_option("--bandwidth", acfg.smoother.bandwidth_days, "Gaussian kernel std dev, days");
    auto* opt_trunc = analyze->add_option("--truncation", acfg.smoother.truncation_multiple, "kernel cut, in bandwidths");
    auto* opt_windows = analyze->add_option("--windows", windows_csv, "large,small rolling windows (days)");
    auto* opt_delta = analyze->add_option("--delta", acfg.threshold.delta_days, "Std difference lag, days");
    auto* opt_theta = analyze->add_option("--theta-mult", acfg.threshold.theta_multiplier, "threshold multiplier on residual std");
    auto* opt_merge = analyze->add_option("--merge-gap", acfg.threshold.merge_gap_days, "merge events closer than this, days");
    auto* opt_block = analyze->add_flag("--block-delta", acfg.threshold.block_mode, "difference disjoint blocks instead of a rolling lag");
    auto* opt_alpha = analyze->add_option("--alpha", acfg.alpha, "significance level");
    auto* opt_ff = analyze->add_flag("--forward-fill", acfg.forward_fill, "bridge small calendar gaps with the last close");
    auto* opt_out = analyze->add_option("--out", acfg.out_dir, "output directory");
    auto* opt_format = analyze->add_option("--format", formats_csv, "output formats: json,csv,svg");
    auto* opt_jobs = analyze->add_option("--jobs", acfg.jobs, "parallel asset jobs (1 = serial)");

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "integrate one model path");
    slowdown::ModelParams params;
    std::string sim_out = "out";
    std::string sim_formats = "json,csv,svg";
    simulate->add_option("--m", params.m, "migration rate");
    simulate->add_option("--r", params.r, "growth rate");
    simulate->add_option("--D", params.D, "noise strength");
    simulate->add_option("--dt", params.dt, "integration step");
    simulate->add_option("--tmax", params.t_max, "horizon");
    simulate->add_option("--u0", params.u0, "initial price");
    simulate->add_option("--seed", params.seed, "RNG seed");
    simulate->add_option("--bound", params.explosion_bound, "explosion bound");
    simulate->add_option("--out", sim_out, "output directory");
    simulate->add_option("--format", sim_formats, "output formats");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "ensemble indicators across a parameter grid");
    slowdown::SweepSpec spec;
    std::string param_name = "m";
    std::string grid_str = "0:1.9:20";
    std::string sweep_out = "out";
    std::string sweep_formats = "json,csv,svg";
    double fixed_u0 = 0.0;
    bool no_detrend = false;
    sweep_cmd->add_option("--param", param_name, "swept parameter: m, r, or D")
        ->check(CLI::IsMember({"m", "r", "D"}));
    sweep_cmd->add_option("--grid", grid_str, "grid as a:b:n");
    sweep_cmd->add_option("--realizations", spec.n_realizations, "paths per grid point");
    sweep_cmd->add_option("--m", spec.base.m, "fixed m");
    sweep_cmd->add_option("--r", spec.base.r, "fixed r");
    sweep_cmd->add_option("--D", spec.base.D, "fixed D");
    sweep_cmd->add_option("--dt", spec.base.dt, "integration step");
    sweep_cmd->add_option("--tmax", spec.base.t_max, "horizon");
    sweep_cmd->add_option("--seed", spec.base.seed, "master seed");
    sweep_cmd->add_option("--burn-in", spec.options.burn_in, "discarded initial span");
    sweep_cmd->add_option("--window", spec.options.window_days, "samples entering AR1/Std");
    sweep_cmd->add_option("--sample-interval", spec.options.sample_interval, "model time between samples");
    sweep_cmd->add_flag("--no-detrend", no_detrend, "indicators on raw u instead of detrended log(u+1)");
    sweep_cmd->add_option("--bandwidth", spec.options.smoother.bandwidth_days, "detrend kernel std dev");
    auto* opt_u0 = sweep_cmd->add_option("--u0", fixed_u0, "fixed initial price (default: upper stable equilibrium)");
    sweep_cmd->add_option("--jobs", spec.options.jobs, "parallel realizations");
    sweep_cmd->add_option("--out", sweep_out, "output directory");
    sweep_cmd->add_option("--format", sweep_formats, "output formats");

    // ---- fetch ----
    auto* fetch_cmd = app.add_subcommand("fetch", "download daily closes into the cache");
    std::string fetch_asset, fetch_from, fetch_to, fetch_out;
    slowdown::FetchConfig fcfg = slowdown::fetch_config_from_env();
    fetch_cmd->add_option("--asset", fetch_asset, "asset id")->required();
    fetch_cmd->add_option("--from", fetch_from, "first date (YYYY-MM-DD)")->required();
    fetch_cmd->add_option("--to", fetch_to, "last date (YYYY-MM-DD)")->required();
    fetch_cmd->add_option("--base-url", fcfg.base_url, "API base URL (default: SLOWDOWN_API_BASE)");
    fetch_cmd->add_option("--api-key", fcfg.api_key, "API key (default: SLOWDOWN_API_KEY)");
    fetch_cmd->add_option("--cache-dir", fcfg.cache_dir, "cache directory (default: SLOWDOWN_CACHE_DIR)");
    fetch_cmd->add_option("--max-attempts", fcfg.max_attempts, "retry budget for 429/5xx");
    fetch_cmd->add_option("--backoff-ms", fcfg.initial_backoff_ms, "initial retry backoff");
    fetch_cmd->add_option("--out", fetch_out, "also write the series to this CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed()) {
            if (*opt_config) {
                slowdown::AnalysisConfig base = slowdown::analysis_config_from_json(config_path);
                // Explicit flags override the config file.
                if (!*opt_assets) assets_csv.clear();
                if (*opt_assets) base.assets = split_csv(assets_csv);
                if (*opt_datadir) base.data_dir = acfg.data_dir;
                if (*opt_from) base.from = slowdown::Date::parse(from_str);
                if (*opt_to) base.to = slowdown::Date::parse(to_str);
                if (*opt_bw) base.smoother.bandwidth_days = acfg.smoother.bandwidth_days;
                if (*opt_trunc) base.smoother.truncation_multiple = acfg.smoother.truncation_multiple;
                if (*opt_delta) base.threshold.delta_days = acfg.threshold.delta_days;
                if (*opt_theta) base.threshold.theta_multiplier = acfg.threshold.theta_multiplier;
                if (*opt_merge) base.threshold.merge_gap_days = acfg.threshold.merge_gap_days;
                if (*opt_block) base.threshold.block_mode = acfg.threshold.block_mode;
                if (*opt_alpha) base.alpha = acfg.alpha;
                if (*opt_ff) base.forward_fill = acfg.forward_fill;
                if (*opt_out) base.out_dir = acfg.out_dir;
                if (*opt_jobs) base.jobs = acfg.jobs;
                if (*opt_windows) {
                    const auto w = split_csv(windows_csv);
                    if (w.size() != 2) throw CLI::ValidationError("--windows", "expected LARGE,SMALL");
                    base.large_window.window_days = std::stoi(w[0]);
                    base.small_window.window_days = std::stoi(w[1]);
                }
                if (*opt_format) base.formats = split_csv(formats_csv);
                return run_analyze_cmd(base);
            }
            acfg.assets = split_csv(assets_csv);
            if (*opt_from) acfg.from = slowdown::Date::parse(from_str);
            if (*opt_to) acfg.to = slowdown::Date::parse(to_str);
            if (*opt_windows) {
                const auto w = split_csv(windows_csv);
                if (w.size() != 2) throw CLI::ValidationError("--windows", "expected LARGE,SMALL");
                acfg.large_window.window_days = std::stoi(w[0]);
                acfg.small_window.window_days = std::stoi(w[1]);
            }
            if (*opt_format) acfg.formats = split_csv(formats_csv);
            return run_analyze_cmd(acfg);
        }

        if (simulate->parsed()) {
            const slowdown::SimulateOutput out =
                slowdown::run_simulate(params, sim_out, split_csv(sim_formats));
            std::printf("simulated %zu steps, final u = %.10g\n", out.path.values.size() - 1,
                        out.path.values.back());
            for (const std::string& f : out.files) std::printf("wrote %s\n", f.c_str());
            return 0;
        }

        if (sweep_cmd->parsed()) {
            spec.parameter = param_name == "m"   ? slowdown::SweepParameter::M
                             : param_name == "r" ? slowdown::SweepParameter::R
                                                 : slowdown::SweepParameter::D;
            spec.grid = parse_grid(grid_str);
            spec.options.detrend = !no_detrend;
            if (*opt_u0) {
                spec.auto_u0 = false;
                spec.base.u0 = fixed_u0;
            }
            const slowdown::SweepOutput out =
                slowdown::run_sweep(spec, sweep_out, split_csv(sweep_formats));
            for (std::size_t i = 0; i < out.result.grid.size(); ++i) {
                std::printf("%-10.6g mean_ar1=%-12.6g mean_std=%-12.6g transitioned=%d exploded=%d\n",
                            out.result.grid[i], out.result.mean_ar1[i], out.result.mean_std[i],
                            out.result.n_transitioned[i], out.result.n_exploded[i]);
            }
            for (const std::string& f : out.files) std::printf("wrote %s\n", f.c_str());
            return 0;
        }

        if (fetch_cmd->parsed()) {
            const slowdown::PriceSeries series = slowdown::fetch_remote(
                fetch_asset, slowdown::Date::parse(fetch_from), slowdown::Date::parse(fetch_to), fcfg);
            std::printf("fetched %zu days of %s (%s .. %s)\n", series.size(), fetch_asset.c_str(),
                        series.dates.front().to_string().c_str(),
                        series.dates.back().to_string().c_str());
            if (!fetch_out.empty()) {
                slowdown::save_csv(fetch_out, series);
                std::printf("wrote %s\n", fetch_out.c_str());
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
