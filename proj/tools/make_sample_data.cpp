// Generates the bundled six-asset daily price fixtures in data/.
//
// Each series is trend + AR(1) noise with a slowly rising volatility
// envelope and a short high-volatility episode, shaped so that the full
// analysis pipeline (detrend, stationarity tests, rolling indicators,
// warning detection) reproduces the documented fixture properties with
// margin. The generator searches a small deterministic seed space per
// asset and fails loudly if no candidate passes every gate, so the
// emitted CSVs are reproducible byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "slowdown/csv_io.hpp"
#include "slowdown/indicators.hpp"
#include "slowdown/preprocess.hpp"
#include "slowdown/rng.hpp"
#include "slowdown/series.hpp"
#include "slowdown/stationarity.hpp"

namespace {

using slowdown::Date;

struct AssetSpec {
    const char* name;
    double target_std;      // full-series residual std to hit (within 5%)
    const char* ev_start;   // high-volatility episode, inclusive
    const char* ev_end;
    double base;            // log1p price floor
    double slope;           // total linear rise over the series (log units)
    double amp;             // boom bump height (log units)
    const char* peak;       // bump centre date
    double width;           // bump gaussian width, days (widened if needed)
    double kappa;           // episode volatility multiplier
};

const AssetSpec kAssets[] = {
    {"btc", 7.623e-2, "2017-12-20", "2018-01-08", 6.0, 1.8, 2.2, "2017-12-28", 150.0, 3.3},
    {"xrp", 5.723e-2, "2017-12-20", "2018-01-28", 1.8, 1.2, 1.7, "2017-12-30", 150.0, 3.0},
    {"ltc", 1.115e-1, "2017-12-20", "2018-02-08", 2.3, 1.0, 1.6, "2018-01-03", 150.0, 2.8},
    {"xlm", 2.229e-2, "2017-12-20", "2018-01-28", 1.7, 0.9, 1.3, "2017-12-29", 240.0, 3.0},
    {"xem", 3.415e-2, "2018-01-09", "2018-01-28", 1.7, 1.0, 1.2, "2018-01-15", 180.0, 3.2},
    {"dash", 1.074e-1, "2017-03-15", "2017-04-03", 2.5, 1.3, 1.4, "2017-03-24", 130.0, 2.8},
};

constexpr const char* kFirstDay = "2016-01-01";
constexpr const char* kLastDay = "2018-03-31";
constexpr double kEnvelopeRamp = 1.1;  // envelope grows 1 -> 1+ramp across the series
constexpr std::uint64_t kMasterSeed = 0x5eedda7a0001ULL;

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Spearman rank correlation against the sample index (monotonicity check).
double spearman_vs_index(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }
    const double mu = 0.5 * static_cast<double>(n + 1);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double dx = static_cast<double>(t + 1) - mu;
        const double dy = rank[t] - mu;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> trend_curve(const AssetSpec& a, int n, double width, int peak_idx) {
    std::vector<double> trend(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double z = (static_cast<double>(i) - peak_idx) / width;
        trend[static_cast<std::size_t>(i)] =
            a.base + a.slope * static_cast<double>(i) / (n - 1) + a.amp * std::exp(-0.5 * z * z);
    }
    return trend;
}

std::vector<double> envelope(const AssetSpec& a, int n, int ev0, int ev1) {
    std::vector<double> env(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double e = 1.0 + kEnvelopeRamp * static_cast<double>(i) / (n - 1);
        if (i >= ev0 && i <= ev1) e *= a.kappa;
        env[static_cast<std::size_t>(i)] = e;
    }
    return env;
}

std::vector<double> ar1_noise(const std::vector<double>& env, double phi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x(env.size());
    x[0] = env[0] * normal(rng);
    const double innov = std::sqrt(1.0 - phi * phi);
    for (std::size_t i = 1; i < env.size(); ++i)
        x[i] = phi * x[i - 1] + env[i] * innov * normal(rng);
    return x;
}

slowdown::PriceSeries to_prices(const std::string& asset, const std::vector<Date>& dates,
                                const std::vector<double>& log_price) {
    slowdown::PriceSeries ps;
    ps.asset = asset;
    ps.dates = dates;
    ps.prices.reserve(log_price.size());
    for (double l : log_price) ps.prices.push_back(std::expm1(l));
    return ps;
}

struct Candidate {
    slowdown::PriceSeries series;
    slowdown::ResidualSeries resid;
    slowdown::StationarityReport adf, kpss;
    slowdown::IndicatorSeries large, small;
    std::vector<slowdown::WarningEvent> events;
    double min_log = 0.0;
    double ar1_mean = 0.0;
    double std_rho = 0.0;
};

Candidate evaluate(const std::string& asset, const std::vector<Date>& dates,
                   const std::vector<double>& log_price) {
    Candidate c;
    c.series = to_prices(asset, dates, log_price);
    c.min_log = *std::min_element(log_price.begin(), log_price.end());
    c.resid = slowdown::detrend(c.series);
    c.adf = slowdown::adf_test(c.resid.values);
    c.kpss = slowdown::kpss_test(c.resid.values);
    c.large = slowdown::rolling_indicators(c.resid, {410, 1});
    c.small = slowdown::rolling_indicators(c.resid, {60, 1});
    c.events = slowdown::detect_warnings(c.resid, c.small, {});
    c.ar1_mean = mean_of(c.large.ar1);
    c.std_rho = spearman_vs_index(c.large.std);
    return c;
}

bool passes(const Candidate& c, const AssetSpec& a, Date ev_start, Date ev_end,
            std::string* why) {
    const auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    char buf[160];
    if (c.min_log < 0.3) return fail("log price too close to zero");
    if (c.adf.p_value > 0.001 + 1e-12) {
        std::snprintf(buf, sizeof buf, "adf p %.4f", c.adf.p_value);
        return fail(buf);
    }
    const double adf_hard =
        slowdown::detail::adf_critical_value(0.001, c.adf.n_effective) - 0.25;
    if (c.adf.statistic > adf_hard) {
        std::snprintf(buf, sizeof buf, "adf stat %.2f above margin %.2f", c.adf.statistic,
                      adf_hard);
        return fail(buf);
    }
    if (c.kpss.p_value < 0.06) {
        std::snprintf(buf, sizeof buf, "kpss p %.4f", c.kpss.p_value);
        return fail(buf);
    }
    if (!slowdown::is_stationary(c.adf, c.kpss)) return fail("not stationary");
    if (std::abs(c.resid.std / a.target_std - 1.0) > 0.05) {
        std::snprintf(buf, sizeof buf, "resid std %.5f vs target %.5f", c.resid.std,
                      a.target_std);
        return fail(buf);
    }
    if (std::abs(c.resid.mean) > 0.05 * c.resid.std) {
        std::snprintf(buf, sizeof buf, "resid mean %.2e too large", c.resid.mean);
        return fail(buf);
    }
    if (c.ar1_mean < 0.68 || c.ar1_mean > 0.90) {
        std::snprintf(buf, sizeof buf, "ar1 mean %.3f out of band", c.ar1_mean);
        return fail(buf);
    }
    if (c.std_rho < 0.80) {
        std::snprintf(buf, sizeof buf, "std spearman %.3f", c.std_rho);
        return fail(buf);
    }
    if (c.large.clamped_count != 0 || c.small.clamped_count != 0) return fail("clamped ar1");
    if (c.events.empty() || c.events.size() > 4) {
        std::snprintf(buf, sizeof buf, "%zu events", c.events.size());
        return fail(buf);
    }
    const bool overlap = std::any_of(
        c.events.begin(), c.events.end(), [&](const slowdown::WarningEvent& e) {
            return e.start_date <= ev_end && e.end_date >= ev_start;
        });
    if (!overlap) return fail("no event overlapping the episode window");
    return true;
}

bool build_asset(std::size_t asset_idx, const std::filesystem::path& out_dir) {
    const AssetSpec& a = kAssets[asset_idx];
    const Date first = Date::parse(kFirstDay);
    const Date last = Date::parse(kLastDay);
    const int n = last - first + 1;
    std::vector<Date> dates;
    dates.reserve(static_cast<std::size_t>(n));
    for (Date d = first; d <= last; ++d) dates.push_back(d);

    const Date ev_start = Date::parse(a.ev_start);
    const Date ev_end = Date::parse(a.ev_end);
    const int ev0 = ev_start - first;
    const int ev1 = ev_end - first;
    const int peak_idx = Date::parse(a.peak) - first;

    // Make the trend near-invariant under the pipeline smoother by
    // iteratively subtracting its own detrending residue (the smoother is
    // linear, so the residue shrinks geometrically). Otherwise the boom
    // bump leaks a slow coherent hump into the residuals that distorts
    // the stationarity tests on the small-volatility assets.
    std::vector<double> trend = trend_curve(a, n, a.width, peak_idx);
    slowdown::ResidualSeries trend_resid;
    for (int round = 0; round < 200; ++round) {
        trend_resid = slowdown::detrend(to_prices(a.name, dates, trend));
        if (trend_resid.std <= 0.15 * a.target_std) break;
        for (int i = 0; i < n; ++i)
            trend[static_cast<std::size_t>(i)] -= trend_resid.values[static_cast<std::size_t>(i)];
    }
    if (trend_resid.std > 0.15 * a.target_std) {
        std::fprintf(stderr, "%s: trend residue %.5f too large for target %.5f\n", a.name,
                     trend_resid.std, a.target_std);
        return false;
    }

    const std::vector<double> env = envelope(a, n, ev0, ev1);
    std::string why;
    for (std::uint64_t attempt = 0; attempt < 200; ++attempt) {
        const std::uint64_t seed = slowdown::derive_seed(kMasterSeed, asset_idx, attempt);
        double phi = 0.93;
        for (int round = 0; round < 5; ++round) {
            const std::vector<double> x = ar1_noise(env, phi, seed);

            // The smoother is linear, so resid(trend + s*x) =
            // resid(trend) + s*resid(x); solve the scale s that puts the
            // sample std of the combination exactly on target. Probe at a
            // scale small enough to keep log prices positive.
            const double probe = 1e-3;
            std::vector<double> lp(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) lp[i] = trend[i] + probe * x[i];
            const slowdown::ResidualSeries both = slowdown::detrend(to_prices(a.name, dates, lp));
            std::vector<double> rx(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                rx[i] = (both.values[i] - trend_resid.values[i]) / probe;
            const double mx = mean_of(rx);
            const double mt = trend_resid.mean;
            double sxx = 0.0, stt = 0.0, sxt = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double dxv = rx[i] - mx;
                const double dtv = trend_resid.values[i] - mt;
                sxx += dxv * dxv;
                stt += dtv * dtv;
                sxt += dxv * dtv;
            }
            const double denom = static_cast<double>(x.size()) - 1.0;
            const double va = sxx / denom, vb = 2.0 * sxt / denom, vc = stt / denom;
            const double disc = vb * vb - 4.0 * va * (vc - a.target_std * a.target_std);
            if (disc <= 0.0 || va <= 0.0) break;
            const double s = (-vb + std::sqrt(disc)) / (2.0 * va);
            if (!(s > 0.0)) break;

            for (std::size_t i = 0; i < x.size(); ++i) lp[i] = trend[i] + s * x[i];
            const Candidate c = evaluate(a.name, dates, lp);
            if (passes(c, a, ev_start, ev_end, &why)) {
                const auto path = out_dir / (std::string(a.name) + ".csv");
                slowdown::save_csv(path.string(), c.series);
                std::printf(
                    "%-5s seed %3llu phi %.3f scale %.4f  std %.5f (target %.5f)  adf %6.2f  "
                    "kpss p %.3f  ar1 %.3f  rho %.3f  events %zu\n",
                    a.name, static_cast<unsigned long long>(attempt), phi, s, c.resid.std,
                    a.target_std, c.adf.statistic, c.kpss.p_value, c.ar1_mean, c.std_rho,
                    c.events.size());
                return true;
            }
            // Only the AR1-level gate responds to phi; everything else is
            // seed luck, so bail to the next seed unless phi can help.
            if (c.ar1_mean >= 0.68 && c.ar1_mean <= 0.90) break;
            phi = std::clamp(phi + 0.5 * (0.79 - c.ar1_mean), 0.85, 0.975);
        }
    }
    std::fprintf(stderr, "%s: no candidate passed after 200 seeds (last: %s)\n", a.name,
                 why.c_str());
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path out_dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(out_dir);
    bool ok = true;
    for (std::size_t i = 0; i < std::size(kAssets); ++i) ok = build_asset(i, out_dir) && ok;
    return ok ? 0 : 1;
}
