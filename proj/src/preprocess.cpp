#include "slowdown/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "slowdown/errors.hpp"

namespace slowdown {

void PriceSeries::validate() const {
    if (dates.size() != prices.size()) {
        throw std::invalid_argument("PriceSeries '" + asset + "': " + std::to_string(dates.size()) +
                                    " dates vs " + std::to_string(prices.size()) + " prices");
    }
    if (prices.size() < 2) {
        throw std::invalid_argument("PriceSeries '" + asset + "': need at least 2 points");
    }
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!std::isfinite(prices[i]) || prices[i] < 0.0) {
            throw std::invalid_argument("PriceSeries '" + asset + "': bad price " +
                                        std::to_string(prices[i]) + " at index " + std::to_string(i) +
                                        " (" + dates[i].to_string() + ")");
        }
        if (i > 0 && dates[i] - dates[i - 1] != 1) {
            throw std::invalid_argument("PriceSeries '" + asset + "': dates not consecutive at index " +
                                        std::to_string(i) + " (" + dates[i - 1].to_string() + " -> " +
                                        dates[i].to_string() + ")");
        }
    }
}

int SmootherConfig::radius() const {
    return static_cast<int>(std::floor(truncation_multiple * bandwidth_days));
}

void SmootherConfig::validate() const {
    if (!(bandwidth_days > 0.0)) {
        throw std::invalid_argument("smoother bandwidth must be positive");
    }
    if (!(truncation_multiple >= 1.0)) {
        throw std::invalid_argument("smoother truncation multiple must be >= 1");
    }
}

std::vector<double> log_transform(const PriceSeries& prices) {
    std::vector<double> out(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) {
        const double z = prices.prices[i];
        if (!std::isfinite(z) || z < 0.0) {
            throw std::invalid_argument("log_transform: bad price " + std::to_string(z) +
                                        " at index " + std::to_string(i));
        }
        out[i] = std::log1p(z);
    }
    return out;
}

std::vector<double> gaussian_smooth(const std::vector<double>& x, const SmootherConfig& cfg) {
    cfg.validate();
    if (x.empty()) {
        throw std::invalid_argument("gaussian_smooth: empty series");
    }
    const int n = static_cast<int>(x.size());
    const int radius = cfg.radius();

    // One-sided weight table; w[k] = exp(-k^2 / (2 b^2)).
    std::vector<double> w(radius + 1);
    const double inv2b2 = 1.0 / (2.0 * cfg.bandwidth_days * cfg.bandwidth_days);
    for (int k = 0; k <= radius; ++k) {
        w[k] = std::exp(-static_cast<double>(k) * k * inv2b2);
    }

    std::vector<double> trend(x.size());
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - radius);
        const int hi = std::min(n - 1, i + radius);
        double num = 0.0;
        double den = 0.0;
        for (int j = lo; j <= hi; ++j) {
            const double wk = w[std::abs(i - j)];
            num += wk * x[j];
            den += wk;
        }
        trend[i] = num / den;
    }
    return trend;
}

ResidualSeries detrend(const PriceSeries& prices, const SmootherConfig& cfg) {
    prices.validate();
    cfg.validate();
    if (prices.size() < 2 * static_cast<std::size_t>(cfg.radius())) {
        throw std::invalid_argument("detrend: series of length " + std::to_string(prices.size()) +
                                    " is shorter than twice the truncation radius " +
                                    std::to_string(cfg.radius()));
    }

    ResidualSeries r;
    r.asset = prices.asset;
    r.dates = prices.dates;
    r.log_price = log_transform(prices);
    r.trend = gaussian_smooth(r.log_price, cfg);
    r.values.resize(r.log_price.size());
    double scale = 1.0;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        r.values[i] = r.log_price[i] - r.trend[i];
        scale = std::max(scale, std::abs(r.log_price[i]));
    }

    const SummaryStats s = summary_stats(r.values);
    if (s.std <= 1e-12 * scale) {
        throw DegenerateSeriesError("detrend: residuals of '" + prices.asset +
                                    "' have zero variance");
    }
    r.mean = s.mean;
    r.std = s.std;
    return r;
}

SummaryStats summary_stats(const std::vector<double>& xs) {
    if (xs.size() < 2) {
        throw std::invalid_argument("summary_stats: need at least 2 points, got " +
                                    std::to_string(xs.size()));
    }
    double sum = 0.0;
    for (double v : xs) sum += v;
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double v : xs) {
        const double d = v - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace slowdown
