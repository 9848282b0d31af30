#include "slowdown/neutral_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "slowdown/errors.hpp"
#include "slowdown/rng.hpp"

namespace slowdown {

void ModelParams::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_max >= dt)) throw std::invalid_argument("t_max must be >= dt");
    if (!(D >= 0.0)) throw std::invalid_argument("D must be non-negative");
    if (!(explosion_bound > 0.0)) throw std::invalid_argument("explosion_bound must be positive");
    if (!std::isfinite(m) || !std::isfinite(r) || !std::isfinite(u0)) {
        throw std::invalid_argument("model parameters must be finite");
    }
}

double drift(double u, double m, double r) {
    return -m + r * u - u * u * u;
}

namespace {

double refine_root(double u, double m, double r) {
    // One Newton step on g(u) = u^3 - r u + m; skipped near folds where
    // g' vanishes and the step would be ill-conditioned.
    const double gp = 3.0 * u * u - r;
    if (std::abs(gp) < 1e-8 * std::max(1.0, std::abs(r))) return u;
    return u - (u * u * u - r * u + m) / gp;
}

Stability classify(double u, double r) {
    const double fp = r - 3.0 * u * u;
    const double tol = 1e-9 * std::max(1.0, std::abs(r));
    if (fp < -tol) return Stability::Stable;
    if (fp > tol) return Stability::Unstable;
    return Stability::Fold;
}

}  // namespace

EquilibriumSet equilibria(double m, double r) {
    if (!std::isfinite(m) || !std::isfinite(r)) {
        throw std::invalid_argument("equilibria: parameters must be finite");
    }
    // Roots of the depressed cubic u^3 + p u + q with p = -r, q = m.
    const double p = -r;
    const double q = m;
    const double disc = 4.0 * r * r * r - 27.0 * m * m;
    const double disc_tol = 1e-10 * std::max(1.0, 4.0 * std::abs(r * r * r) + 27.0 * m * m);

    std::vector<double> roots;
    if (disc > disc_tol) {
        // Three distinct real roots (trigonometric form; requires p < 0).
        const double amp = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
        const double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k) {
            roots.push_back(amp * std::cos((theta - 2.0 * std::numbers::pi * k) / 3.0));
        }
    } else if (disc < -disc_tol) {
        // One real root (Cardano).
        const double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s));
    } else if (std::abs(p) < 1e-12 * std::max(1.0, std::abs(r))) {
        roots.push_back(0.0);  // triple root at the cusp m = r = 0
    } else {
        // Double root plus a simple root.
        roots.push_back(3.0 * q / p);
        roots.push_back(-3.0 * q / (2.0 * p));
    }

    for (double& u : roots) u = refine_root(u, m, r);
    std::sort(roots.begin(), roots.end());

    EquilibriumSet set;
    set.roots = std::move(roots);
    for (double u : set.roots) set.stability.push_back(classify(u, r));
    return set;
}

std::vector<FoldPoint> fold_points(double r) {
    if (!(r > 0.0)) return {};
    const double u = std::sqrt(r / 3.0);
    const double m = r * u - u * u * u;
    return {{-m, -u}, {m, u}};  // ordered by m
}

std::vector<BifurcationRow> bifurcation_diagram(SweepParameter swept,
                                                const std::vector<double>& grid,
                                                double fixed_value) {
    if (swept == SweepParameter::D) {
        throw std::invalid_argument("bifurcation_diagram: equilibria do not depend on D");
    }
    std::vector<BifurcationRow> rows;
    for (double g : grid) {
        const double m = swept == SweepParameter::M ? g : fixed_value;
        const double r = swept == SweepParameter::R ? g : fixed_value;
        const EquilibriumSet set = equilibria(m, r);
        for (std::size_t i = 0; i < set.roots.size(); ++i) {
            rows.push_back({g, set.roots[i], set.stability[i]});
        }
    }
    return rows;
}

namespace {

// Core Euler-Maruyama loop; observe(k, u) is called for every step index
// k = 0..n_steps with the state at time k*dt.
template <typename Observer>
void integrate(const ModelParams& p, Observer&& observe) {
    p.validate();
    const auto n_steps = static_cast<std::size_t>(std::llround(p.t_max / p.dt));
    const double sqrt_dt = std::sqrt(p.dt);
    const double noise_coeff = std::sqrt(p.D);

    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    double u = p.u0;
    observe(static_cast<std::size_t>(0), u);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double xi = normal(rng);
        u = u + drift(u, p.m, p.r) * p.dt + noise_coeff * u * sqrt_dt * xi;
        if (!std::isfinite(u) || std::abs(u) > p.explosion_bound) {
            throw ExplosionError(k + 1, u, p.explosion_bound);
        }
        observe(k + 1, u);
    }
}

}  // namespace

Path simulate_em(const ModelParams& p) {
    Path path;
    path.params = p;
    const auto n_steps = static_cast<std::size_t>(std::llround(p.t_max / p.dt));
    path.times.reserve(n_steps + 1);
    path.values.reserve(n_steps + 1);
    integrate(p, [&](std::size_t k, double u) {
        path.times.push_back(static_cast<double>(k) * p.dt);
        path.values.push_back(u);
    });
    return path;
}

std::vector<double> simulate_sampled(const ModelParams& p, double burn_in, double sample_interval) {
    if (!(burn_in >= 0.0) || burn_in > p.t_max) {
        throw std::invalid_argument("simulate_sampled: burn_in must lie in [0, t_max]");
    }
    const auto stride = static_cast<std::size_t>(std::llround(sample_interval / p.dt));
    if (stride < 1) {
        throw std::invalid_argument("simulate_sampled: sample_interval must be >= dt");
    }
    const auto burn_steps = static_cast<std::size_t>(std::llround(burn_in / p.dt));

    std::vector<double> samples;
    integrate(p, [&](std::size_t k, double u) {
        if (k >= burn_steps && (k - burn_steps) % stride == 0) samples.push_back(u);
    });
    return samples;
}

void EnsembleOptions::validate(const ModelParams& p) const {
    if (!(burn_in >= 0.0) || burn_in >= p.t_max) {
        throw std::invalid_argument("ensemble: burn_in must lie in [0, t_max)");
    }
    if (!(sample_interval >= p.dt)) {
        throw std::invalid_argument("ensemble: sample_interval must be >= dt");
    }
    if (window_days < 3) {
        throw std::invalid_argument("ensemble: window_days must be >= 3");
    }
    const auto n_retained =
        static_cast<long>(std::floor((p.t_max - burn_in) / sample_interval)) + 1;
    if (n_retained < window_days) {
        throw std::invalid_argument("ensemble: t_max - burn_in spans only " +
                                    std::to_string(n_retained) + " samples, window needs " +
                                    std::to_string(window_days));
    }
    if (detrend) {
        smoother.validate();
        if (window_days < 2 * smoother.radius()) {
            throw std::invalid_argument(
                "ensemble: window shorter than twice the smoother truncation radius");
        }
    }
    if (jobs < 1) {
        throw std::invalid_argument("ensemble: jobs must be >= 1");
    }
}

EnsembleResult ensemble_indicators(const ModelParams& p, int n_realizations,
                                   const EnsembleOptions& options) {
    p.validate();
    options.validate(p);
    if (n_realizations < 2) {
        throw std::invalid_argument("ensemble: need at least 2 realizations");
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> ar1_slot(n_realizations, nan);
    std::vector<double> std_slot(n_realizations, nan);
    std::vector<int> exploded(n_realizations, 0);
    std::vector<int> transitioned(n_realizations, 0);

    auto run_one = [&](int i) {
        ModelParams pi = p;
        pi.seed = derive_seed(p.seed, 0, static_cast<std::uint64_t>(i));
        std::vector<double> xs;
        try {
            xs = simulate_sampled(pi, options.burn_in, options.sample_interval);
        } catch (const ExplosionError&) {
            exploded[i] = 1;
            return;
        }
        // Use the trailing window_days samples.
        std::vector<double> seg(xs.end() - options.window_days, xs.end());

        std::vector<double> values;
        if (options.detrend) {
            for (double u : seg) {
                if (u <= -1.0 + 1e-9) {  // left the log1p domain: lower state
                    transitioned[i] = 1;
                    return;
                }
            }
            std::vector<double> logx(seg.size());
            std::transform(seg.begin(), seg.end(), logx.begin(),
                           [](double u) { return std::log1p(u); });
            const std::vector<double> trend = gaussian_smooth(logx, options.smoother);
            values.resize(logx.size());
            for (std::size_t t = 0; t < logx.size(); ++t) values[t] = logx[t] - trend[t];
        } else {
            values = std::move(seg);
        }

        std_slot[i] = summary_stats(values).std;
        try {
            ar1_slot[i] = ar1(values);
        } catch (const DegenerateSeriesError&) {
            // Deterministic window (D = 0): std is 0, AR1 undefined.
        }
    };

    const int jobs = std::min(options.jobs, n_realizations);
    if (jobs <= 1) {
        for (int i = 0; i < n_realizations; ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&, w] {
                for (int i = w; i < n_realizations; i += jobs) run_one(i);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    EnsembleResult res;
    res.n_total = n_realizations;
    for (int i = 0; i < n_realizations; ++i) {
        res.n_exploded += exploded[i];
        res.n_transitioned += transitioned[i];
    }
    if (res.n_exploded * 5 > n_realizations) {
        throw std::runtime_error("ensemble_indicators: " + std::to_string(res.n_exploded) +
                                 " of " + std::to_string(n_realizations) +
                                 " realizations exploded (> 20%)");
    }

    // Ordered reduction over the slots keeps results identical for any jobs
    // count. Wald standard errors: sample std of the kept values / sqrt(k).
    auto reduce = [](const std::vector<double>& slot, double& mean, double& se, int& used) {
        std::vector<double> kept;
        for (double v : slot) {
            if (!std::isnan(v)) kept.push_back(v);
        }
        used = static_cast<int>(kept.size());
        if (kept.empty()) {
            mean = se = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        if (kept.size() == 1) {
            mean = kept[0];
            se = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        const SummaryStats s = summary_stats(kept);
        mean = s.mean;
        se = s.std / std::sqrt(static_cast<double>(kept.size()));
    };
    reduce(ar1_slot, res.mean_ar1, res.stderr_ar1, res.n_used_ar1);
    reduce(std_slot, res.mean_std, res.stderr_std, res.n_used_std);
    return res;
}

SweepResult sweep(const SweepSpec& spec) {
    if (spec.grid.empty()) {
        throw std::invalid_argument("sweep: empty grid");
    }
    if (spec.n_realizations < 2) {
        throw std::invalid_argument("sweep: need at least 2 realizations per point");
    }

    SweepResult res;
    res.grid = spec.grid;
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        ModelParams p = spec.base;
        switch (spec.parameter) {
            case SweepParameter::M: p.m = spec.grid[g]; break;
            case SweepParameter::R: p.r = spec.grid[g]; break;
            case SweepParameter::D: p.D = spec.grid[g]; break;
        }
        if (spec.auto_u0) {
            // Start on the upper stable branch so indicators measure the
            // fluctuations around the pre-transition state.
            const EquilibriumSet eq = equilibria(p.m, p.r);
            double u0 = eq.roots.back();
            for (std::size_t i = eq.roots.size(); i-- > 0;) {
                if (eq.stability[i] == Stability::Stable) {
                    u0 = eq.roots[i];
                    break;
                }
            }
            p.u0 = u0;
        }
        p.seed = derive_seed(spec.base.seed, g + 1, 0);

        const EnsembleResult e = ensemble_indicators(p, spec.n_realizations, spec.options);
        res.mean_ar1.push_back(e.mean_ar1);
        res.mean_std.push_back(e.mean_std);
        res.stderr_ar1.push_back(e.stderr_ar1);
        res.stderr_std.push_back(e.stderr_std);
        res.u0.push_back(p.u0);
        res.n_transitioned.push_back(e.n_transitioned);
        res.n_exploded.push_back(e.n_exploded);
    }
    return res;
}

}  // namespace slowdown
