// Simulated finite-sample quantiles of the Dickey-Fuller t-statistic for
// the constant-no-trend regression, generated by tools/make_adf_table.cpp
// (120k-400k replications per sample size; see that tool for the exact
// budgets and seeds). Interpolation is linear in 1/n across rows and
// piecewise linear in the statistic within a row. The test suite
// re-validates these numbers against a fresh simulation.

#include <algorithm>
#include <cmath>

#include "slowdown/stationarity.hpp"

namespace slowdown::detail {
namespace {

constexpr int kRows = 8;
constexpr int kCols = 19;
constexpr int kNObs[kRows] = {20, 30, 50, 100, 250, 500, 1000, 3000};
constexpr double kProbs[kCols] = {0.001, 0.005, 0.010, 0.025, 0.050, 0.100, 0.200, 0.300, 0.400, 0.500, 0.600, 0.700, 0.800, 0.900, 0.950, 0.975, 0.990, 0.995, 0.999};
constexpr double kQuantiles[kRows][kCols] = {
    {-4.8635, -4.1405, -3.8185, -3.3733, -3.0192, -2.6499, -2.2377, -1.9603, -1.7333, -1.5256, -1.3191, -1.0871, -0.7915, -0.3505, 0.0184, 0.3527, 0.7500, 1.0228, 1.6187},  // n=20
    {-4.6296, -3.9747, -3.6717, -3.2801, -2.9682, -2.6215, -2.2324, -1.9645, -1.7439, -1.5410, -1.3364, -1.1101, -0.8210, -0.3869, -0.0209, 0.3055, 0.6856, 0.9485, 1.5184},  // n=30
    {-4.3910, -3.8351, -3.5807, -3.2159, -2.9204, -2.6000, -2.2271, -1.9684, -1.7527, -1.5527, -1.3492, -1.1239, -0.8365, -0.4063, -0.0365, 0.2833, 0.6597, 0.9149, 1.4705},  // n=50
    {-4.2126, -3.7136, -3.4916, -3.1599, -2.8879, -2.5815, -2.2226, -1.9683, -1.7569, -1.5577, -1.3571, -1.1322, -0.8480, -0.4233, -0.0608, 0.2562, 0.6245, 0.8626, 1.4002},  // n=100
    {-4.1482, -3.6846, -3.4676, -3.1464, -2.8767, -2.5735, -2.2203, -1.9690, -1.7598, -1.5641, -1.3644, -1.1411, -0.8604, -0.4360, -0.0718, 0.2523, 0.6213, 0.8798, 1.4028},  // n=250
    {-4.1147, -3.6621, -3.4482, -3.1408, -2.8714, -2.5749, -2.2185, -1.9686, -1.7582, -1.5606, -1.3617, -1.1384, -0.8554, -0.4342, -0.0719, 0.2443, 0.6078, 0.8693, 1.3920},  // n=500
    {-4.1130, -3.6686, -3.4506, -3.1343, -2.8666, -2.5684, -2.2180, -1.9686, -1.7618, -1.5668, -1.3690, -1.1442, -0.8652, -0.4442, -0.0819, 0.2440, 0.6164, 0.8580, 1.3708},  // n=1000
    {-4.0734, -3.6354, -3.4313, -3.1251, -2.8646, -2.5727, -2.2195, -1.9704, -1.7591, -1.5640, -1.3645, -1.1423, -0.8639, -0.4349, -0.0786, 0.2389, 0.5990, 0.8382, 1.3568},  // n=3000
};

// Quantile row for an arbitrary sample size, linear in 1/n between the
// bracketing table rows, clamped to the table's ends.
void row_for_n(int n_obs, double out[kCols]) {
    if (n_obs <= kNObs[0]) {
        std::copy(kQuantiles[0], kQuantiles[0] + kCols, out);
        return;
    }
    if (n_obs >= kNObs[kRows - 1]) {
        std::copy(kQuantiles[kRows - 1], kQuantiles[kRows - 1] + kCols, out);
        return;
    }
    int r = 0;
    while (n_obs > kNObs[r + 1]) ++r;
    const double inv_lo = 1.0 / kNObs[r];
    const double inv_hi = 1.0 / kNObs[r + 1];
    const double f = (1.0 / n_obs - inv_lo) / (inv_hi - inv_lo);
    for (int c = 0; c < kCols; ++c) {
        out[c] = kQuantiles[r][c] * (1.0 - f) + kQuantiles[r + 1][c] * f;
    }
}

}  // namespace

double adf_p_value(double statistic, int n_obs) {
    double q[kCols];
    row_for_n(n_obs, q);
    if (statistic <= q[0]) return kProbs[0];
    if (statistic >= q[kCols - 1]) return kProbs[kCols - 1];
    int c = 0;
    while (statistic > q[c + 1]) ++c;
    const double f = (statistic - q[c]) / (q[c + 1] - q[c]);
    return kProbs[c] + f * (kProbs[c + 1] - kProbs[c]);
}

double adf_critical_value(double p, int n_obs) {
    double q[kCols];
    row_for_n(n_obs, q);
    const double pc = std::clamp(p, kProbs[0], kProbs[kCols - 1]);
    int c = 0;
    while (pc > kProbs[c + 1]) ++c;
    const double f = (pc - kProbs[c]) / (kProbs[c + 1] - kProbs[c]);
    return q[c] + f * (q[c + 1] - q[c]);
}

}  // namespace slowdown::detail
