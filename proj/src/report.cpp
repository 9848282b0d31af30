#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "slowdown/report.hpp"
#include "slowdown/svg.hpp"
#include "slowdown/version.hpp"

namespace slowdown {
namespace {

using nlohmann::json;

bool wants(const std::vector<std::string>& formats, const std::string& f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("error writing '" + path + "'");
    }
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json stationarity_json(const StationarityReport& r) {
    return json{{"test", r.test_name},     {"statistic", r.statistic},
                {"p_value", r.p_value},    {"lags_used", r.lags_used},
                {"reject_null", r.reject_null}, {"n_effective", r.n_effective},
                {"alpha", r.alpha}};
}

json indicators_json(const IndicatorSeries& ind, int window_days) {
    json dates = json::array();
    for (Date d : ind.end_dates) dates.push_back(d.to_string());
    return json{{"window_days", window_days},
                {"end_dates", std::move(dates)},
                {"ar1", ind.ar1},
                {"std", ind.std},
                {"clamped_count", ind.clamped_count}};
}

json config_json(const AnalysisConfig& cfg) {
    return json{{"assets", cfg.assets},
                {"data_dir", cfg.data_dir},
                {"from", cfg.from ? json(cfg.from->to_string()) : json()},
                {"to", cfg.to ? json(cfg.to->to_string()) : json()},
                {"bandwidth_days", cfg.smoother.bandwidth_days},
                {"truncation_multiple", cfg.smoother.truncation_multiple},
                {"large_window_days", cfg.large_window.window_days},
                {"small_window_days", cfg.small_window.window_days},
                {"delta_days", cfg.threshold.delta_days},
                {"theta_multiplier", cfg.threshold.theta_multiplier},
                {"merge_gap_days", cfg.threshold.merge_gap_days},
                {"block_mode", cfg.threshold.block_mode},
                {"alpha", cfg.alpha},
                {"forward_fill", cfg.forward_fill},
                {"out_dir", cfg.out_dir},
                {"formats", cfg.formats}};
}

json asset_json(const AssetRecord& rec, const AnalysisConfig& cfg) {
    json j{{"asset", rec.asset},
           {"status", rec.ok ? "ok" : "failed"},
           {"input", json{{"path", rec.input_path},
                          {"fnv1a64", rec.input_hash},
                          {"fill_count", rec.fill_count},
                          {"n_points", rec.n_points}}}};
    if (!rec.ok) j["failure_reason"] = rec.failure_reason;
    if (rec.residuals.size() > 0) {
        j["residuals"] = json{{"mean", rec.residuals.mean},
                              {"std", rec.residuals.std},
                              {"n", rec.residuals.size()},
                              {"from", rec.residuals.dates.front().to_string()},
                              {"to", rec.residuals.dates.back().to_string()}};
    }
    if (rec.has_tests) {
        j["stationarity"] = json{{"adf", stationarity_json(rec.adf)},
                                 {"kpss", stationarity_json(rec.kpss)},
                                 {"stationary", rec.stationary}};
    }
    if (rec.ok) {
        j["indicators"] =
            json{{"large", indicators_json(rec.large, cfg.large_window.window_days)},
                 {"small", indicators_json(rec.small, cfg.small_window.window_days)}};
        json events = json::array();
        for (const WarningEvent& ev : rec.events) {
            events.push_back(json{{"start", ev.start_date.to_string()},
                                  {"end", ev.end_date.to_string()},
                                  {"peak_abs_delta_std", ev.peak_abs_delta_std},
                                  {"theta", ev.theta}});
        }
        j["warnings"] = std::move(events);
    }
    return j;
}

std::vector<double> dates_to_x(const std::vector<Date>& dates) {
    std::vector<double> x(dates.size());
    for (std::size_t i = 0; i < dates.size(); ++i) {
        x[i] = static_cast<double>(dates[i].days_since_epoch());
    }
    return x;
}

void emit_asset_svgs(const AnalysisReport& rep, const AssetRecord& rec, const std::string& prefix,
                     std::vector<std::string>& files) {
    PlotConfig date_axis;
    date_axis.x_is_date = true;

    {
        const std::vector<double> x = dates_to_x(rec.residuals.dates);
        std::vector<double> price(rec.residuals.log_price.size());
        std::vector<double> trend(rec.residuals.trend.size());
        for (std::size_t i = 0; i < price.size(); ++i) {
            price[i] = std::expm1(rec.residuals.log_price[i]);
            trend[i] = std::expm1(rec.residuals.trend[i]);
        }
        PlotConfig cfg = date_axis;
        cfg.y_label = "close";
        const std::string path = prefix + "_price.svg";
        write_text(path, render_svg_plot(rec.asset + " close price",
                                         {{"close", x, price, "#1f77b4"},
                                          {"trend", x, trend, "#ff7f0e"}},
                                         {}, {}, cfg));
        files.push_back(path);
    }
    {
        PlotConfig cfg = date_axis;
        cfg.y_label = "residual";
        const std::string path = prefix + "_residuals.svg";
        write_text(path,
                   render_svg_plot(rec.asset + " detrended log-price residuals",
                                   {{"residual", dates_to_x(rec.residuals.dates),
                                     rec.residuals.values, "#2ca02c"}},
                                   {}, {}, cfg));
        files.push_back(path);
    }

    auto indicator_svg = [&](const IndicatorSeries& ind, int window, bool with_bands) {
        std::vector<PlotBand> bands;
        if (with_bands) {
            for (const WarningEvent& ev : rec.events) {
                bands.push_back({static_cast<double>(ev.start_date.days_since_epoch()),
                                 static_cast<double>(ev.end_date.days_since_epoch())});
            }
        }
        const std::vector<double> x = dates_to_x(ind.end_dates);
        PlotConfig cfg = date_axis;
        cfg.y_label = "AR1 / Std";
        const std::string path =
            prefix + "_indicators_" + std::to_string(window) + "d.svg";
        write_text(path, render_svg_plot(rec.asset + " rolling indicators (" +
                                             std::to_string(window) + "-day window)",
                                         {{"AR1", x, ind.ar1, "#1f77b4"},
                                          {"Std", x, ind.std, "#ff7f0e"}},
                                         bands, {}, cfg));
        files.push_back(path);
    };
    indicator_svg(rec.large, rep.config.large_window.window_days, false);
    indicator_svg(rec.small, rep.config.small_window.window_days, true);
}

void emit_asset_csvs(const AnalysisReport& rep, const AssetRecord& rec, const std::string& prefix,
                     std::vector<std::string>& files) {
    auto track_csv = [&](const IndicatorSeries& ind, int window) {
        std::string out = "date,ar1,std\n";
        for (std::size_t i = 0; i < ind.size(); ++i) {
            out += ind.end_dates[i].to_string();
            out += ',';
            out += num17(ind.ar1[i]);
            out += ',';
            out += num17(ind.std[i]);
            out += '\n';
        }
        const std::string path = prefix + "_indicators_" + std::to_string(window) + "d.csv";
        write_text(path, out);
        files.push_back(path);
    };
    track_csv(rec.large, rep.config.large_window.window_days);
    track_csv(rec.small, rep.config.small_window.window_days);
}

std::string model_params_canonical(const ModelParams& p) {
    std::ostringstream ss;
    ss << "m=" << num17(p.m) << ";r=" << num17(p.r) << ";D=" << num17(p.D)
       << ";dt=" << num17(p.dt) << ";tmax=" << num17(p.t_max) << ";u0=" << num17(p.u0)
       << ";seed=" << p.seed << ";bound=" << num17(p.explosion_bound);
    return ss.str();
}

std::string sweep_spec_canonical(const SweepSpec& spec) {
    std::ostringstream ss;
    switch (spec.parameter) {
        case SweepParameter::M: ss << "param=m"; break;
        case SweepParameter::R: ss << "param=r"; break;
        case SweepParameter::D: ss << "param=D"; break;
    }
    ss << ";grid=";
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        ss << (i ? "," : "") << num17(spec.grid[i]);
    }
    ss << ";" << model_params_canonical(spec.base) << ";n=" << spec.n_realizations
       << ";burn_in=" << num17(spec.options.burn_in)
       << ";interval=" << num17(spec.options.sample_interval)
       << ";window=" << spec.options.window_days << ";detrend=" << (spec.options.detrend ? 1 : 0)
       << ";bandwidth=" << num17(spec.options.smoother.bandwidth_days)
       << ";truncation=" << num17(spec.options.smoother.truncation_multiple)
       << ";auto_u0=" << (spec.auto_u0 ? 1 : 0);
    return ss.str();
}

}  // namespace

std::vector<std::string> emit_report(const AnalysisReport& rep) {
    std::filesystem::create_directories(rep.config.out_dir);
    const std::string dir = rep.config.out_dir + "/";
    const std::string h8 = rep.config_hash.substr(0, 8);
    std::vector<std::string> files;

    if (wants(rep.config.formats, "json")) {
        json j{{"schema_version", kReportSchemaVersion},
               {"code_version", rep.code_version},
               {"config", config_json(rep.config)},
               {"config_hash", rep.config_hash},
               {"assets", json::array()}};
        for (const AssetRecord& rec : rep.assets) {
            j["assets"].push_back(asset_json(rec, rep.config));
        }
        const std::string path = dir + "report.json";
        write_text(path, j.dump(2) + "\n");
        files.push_back(path);
    }

    if (wants(rep.config.formats, "csv")) {
        std::string stat = "asset,n,residual_mean,residual_std,adf_stat,adf_p,adf_lags,"
                           "kpss_stat,kpss_p,kpss_lags,stationary,status\n";
        for (const AssetRecord& rec : rep.assets) {
            stat += rec.asset;
            stat += ',' + std::to_string(rec.n_points);
            if (rec.residuals.size() > 0) {
                stat += ',' + num(rec.residuals.mean) + ',' + num(rec.residuals.std);
            } else {
                stat += ",,";
            }
            if (rec.has_tests) {
                stat += ',' + num(rec.adf.statistic) + ',' + num(rec.adf.p_value) + ',' +
                        std::to_string(rec.adf.lags_used) + ',' + num(rec.kpss.statistic) + ',' +
                        num(rec.kpss.p_value) + ',' + std::to_string(rec.kpss.lags_used) + ',' +
                        (rec.stationary ? "true" : "false");
            } else {
                stat += ",,,,,,,";
            }
            stat += ',';
            stat += rec.ok ? "ok" : "failed";
            stat += '\n';
        }
        const std::string stat_path = dir + "stationarity.csv";
        write_text(stat_path, stat);
        files.push_back(stat_path);

        std::string warn = "asset,start,end,days,peak_abs_delta_std,theta\n";
        for (const AssetRecord& rec : rep.assets) {
            for (const WarningEvent& ev : rec.events) {
                warn += rec.asset + ',' + ev.start_date.to_string() + ',' +
                        ev.end_date.to_string() + ',' +
                        std::to_string(ev.end_date - ev.start_date + 1) + ',' +
                        num(ev.peak_abs_delta_std) + ',' + num(ev.theta) + '\n';
            }
        }
        const std::string warn_path = dir + "warnings.csv";
        write_text(warn_path, warn);
        files.push_back(warn_path);

        for (const AssetRecord& rec : rep.assets) {
            if (rec.ok) emit_asset_csvs(rep, rec, dir + rec.asset + "_" + h8, files);
        }
    }

    if (wants(rep.config.formats, "svg")) {
        for (const AssetRecord& rec : rep.assets) {
            if (rec.ok) emit_asset_svgs(rep, rec, dir + rec.asset + "_" + h8, files);
        }
    }
    return files;
}

SimulateOutput run_simulate(const ModelParams& params, const std::string& out_dir,
                            const std::vector<std::string>& formats) {
    SimulateOutput out;
    out.path = simulate_em(params);

    std::filesystem::create_directories(out_dir);
    const std::string h8 = hex64(fnv1a64(model_params_canonical(params))).substr(0, 8);
    const std::string prefix = out_dir + "/sim_" + h8;

    if (wants(formats, "csv")) {
        std::string csv = "t,u\n";
        for (std::size_t i = 0; i < out.path.times.size(); ++i) {
            csv += num17(out.path.times[i]);
            csv += ',';
            csv += num17(out.path.values[i]);
            csv += '\n';
        }
        write_text(prefix + "_path.csv", csv);
        out.files.push_back(prefix + "_path.csv");
    }
    if (wants(formats, "json")) {
        double lo = out.path.values[0], hi = out.path.values[0];
        for (double v : out.path.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        json j{{"schema_version", kReportSchemaVersion},
               {"code_version", kVersion},
               {"params", json{{"m", params.m},
                               {"r", params.r},
                               {"D", params.D},
                               {"dt", params.dt},
                               {"t_max", params.t_max},
                               {"u0", params.u0},
                               {"seed", params.seed}}},
               {"n_steps", out.path.values.size() - 1},
               {"final_u", out.path.values.back()},
               {"min_u", lo},
               {"max_u", hi}};
        write_text(prefix + "_summary.json", j.dump(2) + "\n");
        out.files.push_back(prefix + "_summary.json");
    }
    if (wants(formats, "svg")) {
        PlotConfig cfg;
        cfg.x_label = "t";
        cfg.y_label = "u";
        write_text(prefix + "_path.svg",
                   render_svg_plot("model path", {{"u(t)", out.path.times, out.path.values}}, {},
                                   {}, cfg));
        out.files.push_back(prefix + "_path.svg");
    }
    return out;
}

SweepOutput run_sweep(const SweepSpec& spec, const std::string& out_dir,
                      const std::vector<std::string>& formats) {
    SweepOutput out;
    out.result = sweep(spec);

    std::filesystem::create_directories(out_dir);
    const std::string h8 = hex64(fnv1a64(sweep_spec_canonical(spec))).substr(0, 8);
    const std::string prefix = out_dir + "/sweep_" + h8;
    const SweepResult& res = out.result;

    if (wants(formats, "csv")) {
        std::string csv = "grid,mean_ar1,stderr_ar1,mean_std,stderr_std,u0,"
                          "n_transitioned,n_exploded\n";
        for (std::size_t i = 0; i < res.grid.size(); ++i) {
            csv += num17(res.grid[i]);
            csv += ',' + num17(res.mean_ar1[i]) + ',' + num17(res.stderr_ar1[i]);
            csv += ',' + num17(res.mean_std[i]) + ',' + num17(res.stderr_std[i]);
            csv += ',' + num17(res.u0[i]);
            csv += ',' + std::to_string(res.n_transitioned[i]);
            csv += ',' + std::to_string(res.n_exploded[i]) + '\n';
        }
        write_text(prefix + ".csv", csv);
        out.files.push_back(prefix + ".csv");
    }
    if (wants(formats, "json")) {
        json j{{"schema_version", kReportSchemaVersion},
               {"code_version", kVersion},
               {"spec", sweep_spec_canonical(spec)},
               {"grid", res.grid},
               {"mean_ar1", res.mean_ar1},
               {"stderr_ar1", res.stderr_ar1},
               {"mean_std", res.mean_std},
               {"stderr_std", res.stderr_std},
               {"u0", res.u0},
               {"n_transitioned", res.n_transitioned},
               {"n_exploded", res.n_exploded}};
        write_text(prefix + ".json", j.dump(2) + "\n");
        out.files.push_back(prefix + ".json");
    }
    if (wants(formats, "svg")) {
        std::vector<ErrorBar> bars;
        for (std::size_t i = 0; i < res.grid.size(); ++i) {
            if (std::isfinite(res.stderr_ar1[i])) {
                bars.push_back({res.grid[i], res.mean_ar1[i], res.stderr_ar1[i]});
            }
            if (std::isfinite(res.stderr_std[i])) {
                bars.push_back({res.grid[i], res.mean_std[i], res.stderr_std[i]});
            }
        }
        PlotConfig cfg;
        cfg.x_label = "parameter";
        cfg.y_label = "ensemble mean";
        write_text(prefix + ".svg",
                   render_svg_plot("ensemble indicators",
                                   {{"mean AR1", res.grid, res.mean_ar1, "#1f77b4"},
                                    {"mean Std", res.grid, res.mean_std, "#ff7f0e"}},
                                   {}, bars, cfg));
        out.files.push_back(prefix + ".svg");
    }
    return out;
}

}  // namespace slowdown
