#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "slowdown/errors.hpp"
#include "slowdown/preprocess.hpp"
#include "slowdown/stationarity.hpp"
#include "test_util.hpp"

using namespace slowdown;
using testutil::gaussian_vector;

namespace {

std::vector<double> random_walk(std::size_t n, std::uint64_t seed) {
    auto steps = gaussian_vector(n, seed);
    for (std::size_t i = 1; i < n; ++i) steps[i] += steps[i - 1];
    return steps;
}

// Independent oracle for the Dickey-Fuller t-statistic of the 0-lag
// constant-no-trend regression dx_t = a + b x_{t-1} + e_t, via closed-form
// 2-regressor least squares (no shared code with the library's OLS path).
double df_stat_closed_form(const std::vector<double>& x) {
    const std::size_t n = x.size() - 1;
    double sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double xv = x[t];
        const double yv = x[t + 1] - x[t];
        sx += xv;
        sxx += xv * xv;
        sy += yv;
        sxy += xv * yv;
        syy += yv * yv;
    }
    const double nn = static_cast<double>(n);
    const double det = nn * sxx - sx * sx;
    const double b = (nn * sxy - sx * sy) / det;
    const double a = (sy - b * sx) / nn;
    const double ssr = syy - a * sy - b * sxy;
    const double s2 = ssr / (nn - 2.0);
    const double se_b = std::sqrt(s2 * nn / det);
    return b / se_b;
}

}  // namespace

TEST_CASE("adf strongly rejects a unit root for white noise") {
    int rejected_at_001 = 0;
    const int reps = 400;
    for (int s = 0; s < reps; ++s) {
        const auto r = adf_test(gaussian_vector(500, 1000 + static_cast<std::uint64_t>(s)));
        CHECK(r.p_value >= 0.001);  // clamp floor respected
        if (r.p_value <= 0.01) ++rejected_at_001;
    }
    CHECK(rejected_at_001 >= static_cast<int>(0.99 * reps));
}

TEST_CASE("adf size on random walks is near nominal") {
    int rejected = 0;
    const int reps = 400;
    for (int s = 0; s < reps; ++s) {
        const auto r = adf_test(random_walk(500, 5000 + static_cast<std::uint64_t>(s)));
        if (r.reject_null) ++rejected;
    }
    const double rate = static_cast<double>(rejected) / reps;
    CHECK(rate >= 0.02);
    CHECK(rate <= 0.09);
}

TEST_CASE("adf statistic is invariant under affine maps") {
    const auto x = testutil::ar1_series(300, 0.7, 99);
    std::vector<double> ax(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ax[i] = 3.7 * x[i] - 11.0;
    const auto rx = adf_test(x);
    const auto rax = adf_test(ax);
    CHECK(rax.statistic == doctest::Approx(rx.statistic).epsilon(1e-9));
    CHECK(rax.lags_used == rx.lags_used);
    CHECK(rax.p_value == doctest::Approx(rx.p_value).epsilon(1e-9));
}

TEST_CASE("adf p-value interpolation is monotone in the statistic") {
    for (int n : {25, 80, 200, 800, 5000}) {
        double prev = -1.0;
        for (double tau = -6.0; tau <= 2.0; tau += 0.05) {
            const double p = detail::adf_p_value(tau, n);
            CHECK(p >= prev);
            CHECK(p >= 0.001);
            CHECK(p <= 0.999);
            prev = p;
        }
    }
}

TEST_CASE("adf critical values invert the p-value map") {
    for (int n : {50, 100, 500, 2000}) {
        for (double p : {0.01, 0.025, 0.05, 0.10, 0.50, 0.90}) {
            const double tau = detail::adf_critical_value(p, n);
            CHECK(detail::adf_p_value(tau, n) == doctest::Approx(p).epsilon(1e-6));
        }
    }
}

TEST_CASE("embedded adf quantiles agree with a fresh monte carlo of the null") {
    // Re-simulate the Dickey-Fuller null at n=100 with an independent
    // closed-form estimator and compare empirical quantiles against the
    // embedded table.
    const int reps = 20000;
    std::vector<double> stats;
    stats.reserve(reps);
    for (int s = 0; s < reps; ++s)
        stats.push_back(df_stat_closed_form(random_walk(101, 77000 + static_cast<std::uint64_t>(s))));
    std::sort(stats.begin(), stats.end());
    for (double p : {0.01, 0.05, 0.10, 0.50}) {
        const double empirical = stats[static_cast<std::size_t>(p * reps)];
        const double table = detail::adf_critical_value(p, 100);
        CHECK(std::abs(empirical - table) < 0.05);
    }
}

TEST_CASE("adf input validation") {
    CHECK_THROWS_AS(adf_test(std::vector<double>(400, 3.0)), DegenerateSeriesError);
    CHECK_THROWS_AS(adf_test(gaussian_vector(15, 1)), std::invalid_argument);
}

TEST_CASE("kpss accepts white noise and rejects random walks") {
    const int reps = 400;
    int accepted = 0;
    for (int s = 0; s < reps; ++s) {
        const auto r = kpss_test(gaussian_vector(500, 9000 + static_cast<std::uint64_t>(s)));
        CHECK(r.p_value >= 0.01);
        CHECK(r.p_value <= 0.10);
        if (!r.reject_null) ++accepted;
    }
    CHECK(accepted >= static_cast<int>(0.90 * reps));

    int rejected = 0;
    for (int s = 0; s < reps; ++s) {
        const auto r = kpss_test(random_walk(500, 13000 + static_cast<std::uint64_t>(s)));
        if (r.reject_null && r.p_value <= 0.01 + 1e-12) ++rejected;
    }
    CHECK(rejected >= static_cast<int>(0.95 * reps));
}

TEST_CASE("kpss statistic is shift- and scale-invariant") {
    const auto x = testutil::ar1_series(400, 0.5, 21);
    std::vector<double> shifted(x.size()), scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        shifted[i] = x[i] + 123.0;
        scaled[i] = 0.002 * x[i];
    }
    const double base = kpss_test(x).statistic;
    CHECK(kpss_test(shifted).statistic == doctest::Approx(base).epsilon(1e-9));
    CHECK(kpss_test(scaled).statistic == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("kpss input validation") {
    CHECK_THROWS_AS(kpss_test(std::vector<double>(100, 2.0)), DegenerateSeriesError);
    CHECK_THROWS_AS(kpss_test(gaussian_vector(10, 1)), std::invalid_argument);
}

TEST_CASE("stationarity rule is the conjunction of both tests") {
    StationarityReport adf, kpss;
    adf.reject_null = true;
    kpss.reject_null = false;
    CHECK(is_stationary(adf, kpss));
    adf.reject_null = false;
    CHECK_FALSE(is_stationary(adf, kpss));
    adf.reject_null = true;
    kpss.reject_null = true;
    CHECK_FALSE(is_stationary(adf, kpss));
}

TEST_CASE("bundled residual series pass both tests decisively") {
    for (const char* asset : {"btc", "xrp", "ltc", "xlm", "xem", "dash"}) {
        const auto r = detrend(testutil::load_fixture(asset));
        const auto adf = adf_test(r.values);
        const auto kpss = kpss_test(r.values);
        CHECK(adf.p_value <= 0.001 + 1e-12);
        CHECK_FALSE(kpss.reject_null);
        CHECK(is_stationary(adf, kpss));
    }
}
