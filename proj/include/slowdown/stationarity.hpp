#pragma once

#include <string>
#include <vector>

namespace slowdown {

struct StationarityReport {
    std::string test_name;    // "ADF" or "KPSS"
    double statistic = 0.0;
    double p_value = 0.0;     // clamped: ADF [0.001, 0.999], KPSS [0.01, 0.10]
    int lags_used = 0;
    bool reject_null = false; // p_value < alpha
    int n_effective = 0;      // observations entering the test regression
    double alpha = 0.05;
};

/// Augmented Dickey-Fuller unit-root test, constant-no-trend specification.
/// Regresses dx_t on {1, x_{t-1}, dx_{t-1}, ..., dx_{t-p}}; the statistic is
/// the t-ratio on x_{t-1}. With max_lag < 0 the Schwert rule
/// p = floor(12 (n/100)^{1/4}) is applied, followed by backward elimination
/// on the last lag's t-ratio at the 10% level. Null: unit root.
StationarityReport adf_test(const std::vector<double>& x, int max_lag = -1, double alpha = 0.05);

/// KPSS level-stationarity test. Demeans, forms partial sums S_t, and
/// computes sum(S_t^2) / (n^2 s2_lr) with a Bartlett/Newey-West long-run
/// variance. With lag_truncation < 0 uses floor(4 (n/100)^{1/4}).
/// Null: (level) stationarity.
StationarityReport kpss_test(const std::vector<double>& x, int lag_truncation = -1,
                             double alpha = 0.05);

/// The acceptance rule: stationary iff the ADF null (unit root) is rejected
/// and the KPSS null (stationarity) is not.
bool is_stationary(const StationarityReport& adf, const StationarityReport& kpss);

namespace detail {

/// P(DF t-statistic <= statistic) under the random-walk null for a
/// constant-no-trend regression with n_obs usable observations. Interpolated
/// from an embedded simulated quantile table; clamped to [0.001, 0.999].
double adf_p_value(double statistic, int n_obs);

/// Inverse of the above: the tau value with left-tail probability p.
double adf_critical_value(double p, int n_obs);

}  // namespace detail

}  // namespace slowdown
