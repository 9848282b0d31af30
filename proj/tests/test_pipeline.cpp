#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "slowdown/csv_io.hpp"
#include "slowdown/errors.hpp"
#include "slowdown/report.hpp"
#include "test_util.hpp"

using namespace slowdown;
using testutil::TempDir;

namespace {

const std::vector<std::string> kAssets{"btc", "xrp", "ltc", "xlm", "xem", "dash"};

AnalysisConfig fixture_config(const std::string& out_dir) {
    AnalysisConfig cfg;
    cfg.assets = kAssets;
    cfg.data_dir = SLOWDOWN_DATA_DIR;
    cfg.out_dir = out_dir;
    return cfg;
}

// Log-prices riding a 500-day cycle: the smoother absorbs only part of the
// wave, so the residuals keep a slow coherent swing that ADF cannot reject
// as a unit root and KPSS rejects as non-stationary.
void write_slow_cycle_csv(const std::string& path) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal(0.0, 0.02);
    PriceSeries ps;
    ps.asset = "cyc";
    Date d = Date::parse("2016-01-01");
    for (int i = 0; i < 821; ++i, ++d) {
        ps.dates.push_back(d);
        const double logp = 5.0 + std::sin(2.0 * M_PI * i / 500.0) + normal(rng);
        ps.prices.push_back(std::expm1(logp));
    }
    save_csv(path, ps);
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

std::map<std::string, std::string> snapshot(const std::vector<std::string>& files) {
    std::map<std::string, std::string> bytes;
    for (const std::string& f : files) bytes[f] = testutil::slurp(f);
    return bytes;
}

}  // namespace

TEST_CASE("analyze clears all six bundled assets") {
    TempDir tmp;
    AnalysisConfig cfg = fixture_config(tmp.str("out"));
    cfg.jobs = 2;
    const AnalysisReport rep = run_analyze(cfg);

    CHECK(rep.n_ok() == 6);
    CHECK(rep.exit_code() == 0);
    REQUIRE(rep.assets.size() == 6);
    for (std::size_t i = 0; i < rep.assets.size(); ++i) {
        const AssetRecord& rec = rep.assets[i];
        INFO("asset ", rec.asset);
        CHECK(rec.asset == kAssets[i]);
        CHECK(rec.ok);
        CHECK(rec.stationary);
        CHECK(rec.n_points == 821);
        CHECK(rec.fill_count == 0);
        CHECK(rec.input_hash.size() == 16);
        CHECK(rec.events.size() >= 1);
    }

    // The btc warning must cover the documented late-2017 run-up.
    const AssetRecord& btc = rep.assets[0];
    const Date win_start = Date::parse("2017-12-20");
    const Date win_end = Date::parse("2018-01-08");
    bool overlaps = false;
    for (const WarningEvent& ev : btc.events) {
        if (ev.start_date <= win_end && ev.end_date >= win_start) overlaps = true;
    }
    CHECK(overlaps);
}

TEST_CASE("non-stationary residuals are skipped, not analyzed") {
    TempDir tmp;
    const std::string data_dir = tmp.str("data");
    std::filesystem::create_directories(data_dir);
    std::filesystem::copy_file(std::string(SLOWDOWN_DATA_DIR) + "/btc.csv",
                               data_dir + "/btc.csv");
    write_slow_cycle_csv(data_dir + "/cyc.csv");

    AnalysisConfig cfg;
    cfg.assets = {"btc", "cyc"};
    cfg.data_dir = data_dir;
    cfg.out_dir = tmp.str("out");
    const AnalysisReport rep = run_analyze(cfg);

    CHECK(rep.n_ok() == 1);
    CHECK(rep.exit_code() == 2);
    const AssetRecord& cyc = rep.assets[1];
    CHECK_FALSE(cyc.ok);
    CHECK(cyc.has_tests);
    CHECK_FALSE(cyc.stationary);
    CHECK(cyc.failure_reason.find("skipped: non-stationary") == 0);
    CHECK(cyc.events.empty());

    const std::vector<std::string> files = emit_report(rep);
    const std::string stat = testutil::slurp(cfg.out_dir + "/stationarity.csv");
    CHECK(stat.find("cyc,") != std::string::npos);
    CHECK(count_occurrences(stat, ",failed") == 1);
    CHECK(count_occurrences(stat, ",ok") == 1);
    const std::string warn = testutil::slurp(cfg.out_dir + "/warnings.csv");
    CHECK(warn.find("cyc,") == std::string::npos);

    // Per-asset plots and tracks exist only for the analyzed asset.
    int cyc_files = 0;
    for (const std::string& f : files) {
        if (f.find("/cyc_") != std::string::npos) ++cyc_files;
    }
    CHECK(cyc_files == 0);

    AnalysisConfig only_cyc = cfg;
    only_cyc.assets = {"cyc"};
    CHECK(run_analyze(only_cyc).exit_code() == 1);
}

TEST_CASE("a missing input file becomes a failure record") {
    TempDir tmp;
    AnalysisConfig cfg = fixture_config(tmp.str("out"));
    cfg.assets = {"btc", "nosuch"};
    const AnalysisReport rep = run_analyze(cfg);
    CHECK(rep.n_ok() == 1);
    CHECK(rep.exit_code() == 2);
    CHECK_FALSE(rep.assets[1].ok);
    CHECK_FALSE(rep.assets[1].has_tests);
    CHECK_FALSE(rep.assets[1].failure_reason.empty());
}

TEST_CASE("emitted files are byte-identical across reruns and job counts") {
    TempDir tmp;
    AnalysisConfig cfg = fixture_config(tmp.str("out"));
    cfg.assets = {"btc", "xem"};
    cfg.jobs = 1;

    const AnalysisReport first = run_analyze(cfg);
    const auto files1 = emit_report(first);
    const auto bytes1 = snapshot(files1);

    AnalysisConfig parallel = cfg;
    parallel.jobs = 3;
    const AnalysisReport second = run_analyze(parallel);
    const auto files2 = emit_report(second);

    CHECK(first.config_hash == second.config_hash);
    REQUIRE(files1 == files2);
    for (const auto& [path, bytes] : snapshot(files2)) {
        INFO(path);
        CHECK(bytes == bytes1.at(path));
    }
}

TEST_CASE("report json, warnings csv and svg bands agree on event counts") {
    TempDir tmp;
    AnalysisConfig cfg = fixture_config(tmp.str("out"));
    cfg.assets = {"btc"};
    const AnalysisReport rep = run_analyze(cfg);
    const std::vector<std::string> files = emit_report(rep);

    const nlohmann::json j = nlohmann::json::parse(testutil::slurp(cfg.out_dir + "/report.json"));
    REQUIRE(j["assets"].size() == 1);
    const auto& asset = j["assets"][0];
    CHECK(asset.at("asset") == "btc");
    CHECK(asset.at("status") == "ok");
    const std::size_t n_events = asset.at("warnings").size();
    CHECK(n_events == rep.assets[0].events.size());

    std::string svg_path;
    for (const std::string& f : files) {
        if (f.find("_indicators_60d.svg") != std::string::npos) svg_path = f;
    }
    REQUIRE_FALSE(svg_path.empty());
    CHECK(count_occurrences(testutil::slurp(svg_path), "class=\"warning-band\"") == n_events);

    const std::string warn = testutil::slurp(cfg.out_dir + "/warnings.csv");
    CHECK(count_occurrences(warn, "\n") == n_events + 1);  // header + one row per event
}

TEST_CASE("json config files round trip through the canonical form") {
    TempDir tmp;
    AnalysisConfig cfg;
    cfg.assets = {"btc", "xem"};
    cfg.data_dir = SLOWDOWN_DATA_DIR;
    cfg.from = Date::parse("2016-03-01");
    cfg.to = Date::parse("2018-01-31");
    cfg.smoother.bandwidth_days = 75.0;
    cfg.large_window = {300, 1};
    cfg.small_window = {50, 1};
    cfg.threshold.delta_days = 10;
    cfg.threshold.theta_multiplier = 1.5;
    cfg.threshold.block_mode = true;
    cfg.forward_fill = true;
    cfg.formats = {"json"};

    const std::string path = tmp.str("config.json");
    testutil::spit(path, nlohmann::json{{"assets", cfg.assets},
                                        {"data_dir", cfg.data_dir},
                                        {"from", "2016-03-01"},
                                        {"to", "2018-01-31"},
                                        {"bandwidth_days", 75.0},
                                        {"large_window_days", 300},
                                        {"small_window_days", 50},
                                        {"delta_days", 10},
                                        {"theta_multiplier", 1.5},
                                        {"block_mode", true},
                                        {"forward_fill", true},
                                        {"formats", {"json"}}}
                             .dump(2));
    const AnalysisConfig parsed = analysis_config_from_json(path);
    CHECK(parsed.canonical() == cfg.canonical());
    CHECK(parsed.hash() == cfg.hash());
    CHECK(cfg.hash() == hex64(fnv1a64(cfg.canonical())));

    // The config block embedded in a report parses back to the same hash.
    cfg.out_dir = tmp.str("out");
    const AnalysisReport rep = run_analyze(cfg);
    emit_report(rep);
    const nlohmann::json j = nlohmann::json::parse(testutil::slurp(cfg.out_dir + "/report.json"));
    CHECK(j["config_hash"] == cfg.hash());
    const std::string embedded = tmp.str("embedded.json");
    testutil::spit(embedded, j["config"].dump());
    CHECK(analysis_config_from_json(embedded).hash() == cfg.hash());
}

TEST_CASE("fnv1a64 matches the published reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hex64(0) == "0000000000000000");
    CHECK(hex64(0xcbf29ce484222325ULL) == "cbf29ce484222325");
}

TEST_CASE("noise-free simulate settles on the lone equilibrium") {
    TempDir tmp;
    ModelParams p;
    p.m = 3.0;
    p.r = 3.0;
    p.D = 0.0;
    p.t_max = 60.0;
    p.u0 = 1.0;
    const SimulateOutput out = run_simulate(p, tmp.str("sim"), {"json", "csv"});
    CHECK(std::abs(out.path.values.back() - -2.1038034027355357) < 1e-6);
    REQUIRE(out.files.size() == 2);

    const auto bytes1 = snapshot(out.files);
    const SimulateOutput again = run_simulate(p, tmp.str("sim"), {"json", "csv"});
    REQUIRE(again.files == out.files);
    for (const auto& [path, bytes] : snapshot(again.files)) {
        CHECK(bytes == bytes1.at(path));
    }
}

TEST_CASE("sweep outputs are valid and reproducible") {
    TempDir tmp;
    SweepSpec spec;
    spec.parameter = SweepParameter::M;
    spec.grid = {1.0};
    spec.base.seed = 7;
    spec.base.t_max = 150.0;
    spec.n_realizations = 5;
    spec.options.burn_in = 30.0;
    spec.options.window_days = 480;
    spec.options.jobs = 2;

    const SweepOutput out = run_sweep(spec, tmp.str("sw"), {"json", "csv", "svg"});
    REQUIRE(out.result.grid.size() == 1);
    CHECK(out.result.mean_ar1[0] > -1.0);
    CHECK(out.result.mean_ar1[0] < 1.0);
    CHECK(out.result.mean_std[0] > 0.0);
    CHECK(out.result.u0[0] > 0.0);
    REQUIRE(out.files.size() == 3);

    std::string json_path;
    for (const std::string& f : out.files) {
        if (f.size() >= 5 && f.substr(f.size() - 5) == ".json") json_path = f;
    }
    REQUIRE_FALSE(json_path.empty());
    const nlohmann::json j = nlohmann::json::parse(testutil::slurp(json_path));
    CHECK(j["grid"].size() == 1);
    CHECK(j["mean_ar1"][0].get<double>() == out.result.mean_ar1[0]);
    CHECK(j["n_transitioned"][0].get<int>() == out.result.n_transitioned[0]);

    const auto bytes1 = snapshot(out.files);
    const SweepOutput again = run_sweep(spec, tmp.str("sw"), {"json", "csv", "svg"});
    REQUIRE(again.files == out.files);
    for (const auto& [path, bytes] : snapshot(again.files)) {
        INFO(path);
        CHECK(bytes == bytes1.at(path));
    }
}

#ifdef SLOWDOWN_CLI_PATH

TEST_CASE("cli analyze exit codes reflect per-asset outcomes") {
    TempDir tmp;
    const std::string base = "analyze --data-dir " + std::string(SLOWDOWN_DATA_DIR) +
                             " --out " + tmp.str("out");
    const std::string log = tmp.str("cli.log");

    CHECK(testutil::run_cli(base + " --assets btc --format json", log) == 0);
    CHECK(testutil::slurp(log).find("btc: ok") != std::string::npos);

    CHECK(testutil::run_cli(base + " --assets btc,nosuch --format json", log) == 2);
    CHECK(testutil::slurp(log).find("nosuch: FAILED") != std::string::npos);

    CHECK(testutil::run_cli(base + " --assets nosuch --format json", log) == 1);
    CHECK(testutil::run_cli(base + " --format json", log) == 1);  // no assets configured
    CHECK(testutil::run_cli("bogus-subcommand", log) == 1);
    CHECK(testutil::run_cli("--version", log) == 0);
}

TEST_CASE("cli simulate and sweep write their outputs") {
    TempDir tmp;
    const std::string log = tmp.str("cli.log");

    CHECK(testutil::run_cli("simulate --m 3 --r 3 --D 0 --tmax 20 --out " + tmp.str("sim"),
                            log) == 0);
    bool saw_path_csv = false;
    for (const auto& e : std::filesystem::directory_iterator(tmp.str("sim"))) {
        const std::string name = e.path().filename().string();
        if (name.rfind("sim_", 0) == 0 && name.find("_path.csv") != std::string::npos) {
            saw_path_csv = true;
        }
    }
    CHECK(saw_path_csv);

    CHECK(testutil::run_cli("sweep --param m --grid 1.0 --realizations 3 --tmax 120 "
                            "--burn-in 30 --window 360 --out " +
                                tmp.str("sw"),
                            log) == 0);
    bool saw_sweep_csv = false;
    for (const auto& e : std::filesystem::directory_iterator(tmp.str("sw"))) {
        const std::string name = e.path().filename().string();
        if (name.rfind("sweep_", 0) == 0 && name.find(".csv") != std::string::npos) {
            saw_sweep_csv = true;
        }
    }
    CHECK(saw_sweep_csv);

    CHECK(testutil::run_cli("sweep --param q --grid 1.0", log) == 1);  // bad parameter name
}

TEST_CASE("cli fetch without a base url fails cleanly") {
    TempDir tmp;
    const std::string log = tmp.str("cli.log");
    CHECK(testutil::run_cli("fetch --asset btc --from 2016-01-01 --to 2016-01-10 "
                            "--base-url \"\" --cache-dir " +
                                tmp.str("cache"),
                            log) == 1);
    CHECK(testutil::slurp(log).find("error:") != std::string::npos);
}

#endif  // SLOWDOWN_CLI_PATH
