// Monte Carlo generator for the Dickey-Fuller t-statistic quantile table
// embedded in src/adf_quantiles.cpp. Simulates driftless random walks,
// fits the constant-no-trend DF regression dx_t = a + b x_{t-1} + e_t in
// closed form, and prints per-sample-size quantiles as C++ initialisers.
//
// Run once, paste the output block into src/adf_quantiles.cpp. The test
// suite re-validates the frozen numbers with an independent (smaller)
// simulation, so regeneration is only needed if the grid changes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

namespace {

constexpr int kNObs[] = {20, 30, 50, 100, 250, 500, 1000, 3000};
constexpr double kProbs[] = {0.001, 0.005, 0.01,  0.025, 0.05, 0.10, 0.20, 0.30, 0.40, 0.50,
                             0.60,  0.70,  0.80,  0.90,  0.95, 0.975, 0.99, 0.995, 0.999};

// t-ratio on b in dx_t = a + b x_{t-1}, for a random walk of n_obs steps.
double df_tstat(int n_obs, std::mt19937_64& rng, std::normal_distribution<double>& normal) {
    double x = 0.0;
    double sz = 0.0, sy = 0.0, szz = 0.0, szy = 0.0, syy = 0.0;
    for (int t = 0; t < n_obs; ++t) {
        const double dx = normal(rng);
        sz += x;
        sy += dx;
        szz += x * x;
        szy += x * dx;
        syy += dx * dx;
        x += dx;
    }
    const double n = n_obs;
    const double szz_c = szz - sz * sz / n;
    const double szy_c = szy - sz * sy / n;
    const double syy_c = syy - sy * sy / n;
    const double b = szy_c / szz_c;
    const double ssr = syy_c - b * szy_c;
    const double s2 = ssr / (n - 2.0);
    return b / std::sqrt(s2 / szz_c);
}

double quantile(const std::vector<double>& sorted, double p) {
    const double idx = p * (sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double f = idx - lo;
    return sorted[lo] * (1.0 - f) + sorted[lo + 1] * f;
}

}  // namespace

int main() {
    constexpr int kRows = std::size(kNObs);
    constexpr int kCols = std::size(kProbs);

    std::printf("constexpr int kRows = %d;\n", kRows);
    std::printf("constexpr int kCols = %d;\n", kCols);
    std::printf("constexpr int kNObs[kRows] = {");
    for (int r = 0; r < kRows; ++r) std::printf("%s%d", r ? ", " : "", kNObs[r]);
    std::printf("};\n");
    std::printf("constexpr double kProbs[kCols] = {");
    for (int c = 0; c < kCols; ++c) std::printf("%s%.3f", c ? ", " : "", kProbs[c]);
    std::printf("};\n");
    std::printf("constexpr double kQuantiles[kRows][kCols] = {\n");

    for (int r = 0; r < kRows; ++r) {
        const int n = kNObs[r];
        const int reps = n <= 250 ? 400000 : (n <= 1000 ? 200000 : 120000);
        std::mt19937_64 rng(0x5eed0000ULL + static_cast<unsigned long long>(r));
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> stats(reps);
        for (int i = 0; i < reps; ++i) stats[i] = df_tstat(n, rng, normal);
        std::sort(stats.begin(), stats.end());

        std::printf("    {");
        for (int c = 0; c < kCols; ++c) {
            std::printf("%s%.4f", c ? ", " : "", quantile(stats, kProbs[c]));
        }
        std::printf("},  // n=%d (%d reps)\n", n, reps);
    }
    std::printf("};\n");
    return 0;
}
