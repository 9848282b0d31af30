#include "slowdown/stationarity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "slowdown/errors.hpp"
#include "slowdown/ols.hpp"

namespace slowdown {
namespace {

void require_non_degenerate(const std::vector<double>& x, const char* test) {
    double lo = x[0], hi = x[0];
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(test) + ": non-finite value in series");
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    if (hi - lo <= 1e-12 * scale) {
        throw DegenerateSeriesError(std::string(test) + ": series is (numerically) constant");
    }
}

// Design for the ADF(p) regression over dx indices t in [t0, n_dx):
// dx_t on {1, x_t_level_lag, dx_{t-1}, ..., dx_{t-p}} where the level lag is
// x[t] in 0-based series indexing (dx_t = x[t+1] - x[t]).
void build_adf_system(const std::vector<double>& x, const std::vector<double>& dx, int p, int t0,
                      Eigen::MatrixXd& design, Eigen::VectorXd& response) {
    const int n_dx = static_cast<int>(dx.size());
    const int rows = n_dx - t0;
    design.resize(rows, 2 + p);
    response.resize(rows);
    for (int t = t0; t < n_dx; ++t) {
        const int r = t - t0;
        response(r) = dx[t];
        design(r, 0) = 1.0;
        design(r, 1) = x[t];  // level lagged one step behind dx_t
        for (int j = 1; j <= p; ++j) {
            design(r, 1 + j) = dx[t - j];
        }
    }
}

}  // namespace

StationarityReport adf_test(const std::vector<double>& x, int max_lag, double alpha) {
    const int n = static_cast<int>(x.size());
    if (n < 21) {
        throw std::invalid_argument("adf_test: need at least 21 points, got " + std::to_string(n));
    }
    require_non_degenerate(x, "adf_test");

    std::vector<double> dx(n - 1);
    for (int t = 0; t < n - 1; ++t) dx[t] = x[t + 1] - x[t];
    const int n_dx = n - 1;

    int maxlag = max_lag >= 0
                     ? max_lag
                     : static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
    // Keep the largest candidate model estimable on >= 20 observations.
    while (maxlag > 0 && n_dx - maxlag < std::max(20, maxlag + 3)) --maxlag;
    if (n_dx - maxlag < 20) {
        throw std::invalid_argument("adf_test: series too short after lagging/differencing");
    }

    Eigen::MatrixXd design;
    Eigen::VectorXd response;

    // Backward elimination on the last lag's t-ratio, on the sample fixed by
    // the largest candidate so that models are compared on equal footing.
    int p = maxlag;
    while (p > 0) {
        build_adf_system(x, dx, p, maxlag, design, response);
        const OlsFit fit = ols_fit(design, response);
        if (std::abs(fit.t_statistics[1 + p]) >= 1.645) break;
        --p;
    }

    // Final fit on the longest sample the chosen order allows.
    build_adf_system(x, dx, p, p, design, response);
    const OlsFit fit = ols_fit(design, response);

    StationarityReport rep;
    rep.test_name = "ADF";
    rep.statistic = fit.t_statistics[1];
    rep.lags_used = p;
    rep.n_effective = fit.n_obs;
    rep.alpha = alpha;
    rep.p_value = detail::adf_p_value(rep.statistic, rep.n_effective);
    rep.reject_null = rep.p_value < alpha;
    return rep;
}

StationarityReport kpss_test(const std::vector<double>& x, int lag_truncation, double alpha) {
    const int n = static_cast<int>(x.size());
    if (n < 20) {
        throw std::invalid_argument("kpss_test: need at least 20 points, got " + std::to_string(n));
    }
    require_non_degenerate(x, "kpss_test");

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;

    std::vector<double> e(n);
    for (int t = 0; t < n; ++t) e[t] = x[t] - mean;

    double s = 0.0;
    double sum_s2 = 0.0;
    for (int t = 0; t < n; ++t) {
        s += e[t];
        sum_s2 += s * s;
    }
    const double eta = sum_s2 / (static_cast<double>(n) * n);

    int lag = lag_truncation >= 0
                  ? lag_truncation
                  : static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 0.25)));
    lag = std::min(lag, n - 1);

    double s2_lr = 0.0;
    for (double v : e) s2_lr += v * v;
    s2_lr /= n;
    for (int l = 1; l <= lag; ++l) {
        double gamma = 0.0;
        for (int t = l; t < n; ++t) gamma += e[t] * e[t - l];
        gamma /= n;
        s2_lr += 2.0 * (1.0 - static_cast<double>(l) / (lag + 1)) * gamma;
    }
    if (!(s2_lr > 0.0)) {
        throw DegenerateSeriesError("kpss_test: long-run variance is not positive");
    }

    // Level-stationarity critical values (10%, 5%, 2.5%, 1%); p-value by
    // linear interpolation, clamped to the table's range.
    static constexpr double kCrit[] = {0.347, 0.463, 0.574, 0.739};
    static constexpr double kProb[] = {0.10, 0.05, 0.025, 0.01};

    StationarityReport rep;
    rep.test_name = "KPSS";
    rep.statistic = eta / s2_lr;
    rep.lags_used = lag;
    rep.n_effective = n;
    rep.alpha = alpha;

    if (rep.statistic <= kCrit[0]) {
        rep.p_value = kProb[0];
    } else if (rep.statistic >= kCrit[3]) {
        rep.p_value = kProb[3];
    } else {
        int i = 0;
        while (rep.statistic > kCrit[i + 1]) ++i;
        const double f = (rep.statistic - kCrit[i]) / (kCrit[i + 1] - kCrit[i]);
        rep.p_value = kProb[i] + f * (kProb[i + 1] - kProb[i]);
    }
    rep.reject_null = rep.p_value < alpha;
    return rep;
}

bool is_stationary(const StationarityReport& adf, const StationarityReport& kpss) {
    return adf.reject_null && !kpss.reject_null;
}

}  // namespace slowdown
