#pragma once

#include <cstdint>
#include <vector>

#include "slowdown/indicators.hpp"
#include "slowdown/preprocess.hpp"

namespace slowdown {

/// Parameters of the bistable price model
///   du = (-m + r u - u^3) dt + sqrt(D) u dW.
struct ModelParams {
    double m = 1.0;    // migration rate
    double r = 3.0;    // growth rate
    double D = 0.01;   // noise strength
    double dt = 0.01;
    double t_max = 500.0;
    double u0 = 1.0;
    std::uint64_t seed = 0;
    double explosion_bound = 1e6;

    void validate() const;
};

enum class Stability { Stable, Unstable, Fold };

struct EquilibriumSet {
    std::vector<double> roots;          // ascending
    std::vector<Stability> stability;   // matching labels
};

struct FoldPoint {
    double m = 0.0;
    double u = 0.0;
};

struct BifurcationRow {
    double parameter = 0.0;
    double root = 0.0;
    Stability stability = Stability::Stable;
};

struct Path {
    std::vector<double> times;
    std::vector<double> values;
    ModelParams params;
};

enum class SweepParameter { M, R, D };

struct EnsembleOptions {
    double burn_in = 100.0;
    double sample_interval = 0.25;  // model time between retained samples
    int window_days = 1600;         // trailing samples entering the one-shot AR1/Std
    bool detrend = true;            // log1p + Gaussian smoothing, as in the data pipeline
    SmootherConfig smoother{};
    int jobs = 1;

    void validate(const ModelParams& p) const;
};

/// Ensemble means with their Monte Carlo standard errors. Realizations that
/// leave the log1p domain (u <= -1, i.e. jumped to the lower state) are
/// counted in n_transitioned and excluded from the means; only explosions
/// count toward the 20% failure rule. Deterministic zero-variance windows
/// (D = 0) contribute std = 0 but no AR1 sample.
struct EnsembleResult {
    double mean_ar1 = 0.0;
    double mean_std = 0.0;
    double stderr_ar1 = 0.0;
    double stderr_std = 0.0;
    int n_total = 0;
    int n_used_ar1 = 0;
    int n_used_std = 0;
    int n_transitioned = 0;
    int n_exploded = 0;
};

struct SweepSpec {
    SweepParameter parameter = SweepParameter::M;
    std::vector<double> grid;
    ModelParams base{};        // fixed parameters, master seed
    int n_realizations = 100;
    EnsembleOptions options{};
    bool auto_u0 = true;       // start each grid point on its upper stable branch
};

struct SweepResult {
    std::vector<double> grid;
    std::vector<double> mean_ar1;
    std::vector<double> mean_std;
    std::vector<double> stderr_ar1;
    std::vector<double> stderr_std;
    std::vector<double> u0;    // initial condition actually used per point
    std::vector<int> n_transitioned;
    std::vector<int> n_exploded;
};

/// f(u) = -m + r u - u^3.
double drift(double u, double m, double r);

/// All real roots of f(u) = 0 with stability from the sign of
/// f'(u) = r - 3u^2 (negative: stable, positive: unstable, zero: fold).
EquilibriumSet equilibria(double m, double r);

/// Saddle-node (fold) points for fixed r: solutions of f = f' = 0, i.e.
/// u = +/- sqrt(r/3), m = r u - u^3. Empty for r <= 0. Ordered by m.
std::vector<FoldPoint> fold_points(double r);

/// Equilibria swept over a grid of m (fixed r) or r (fixed m).
std::vector<BifurcationRow> bifurcation_diagram(SweepParameter swept,
                                                const std::vector<double>& grid,
                                                double fixed_value);

/// Euler-Maruyama path: u_{k+1} = u_k + f(u_k) dt + sqrt(D) u_k sqrt(dt) xi_k.
/// Bit-identical for identical seeds. Throws ExplosionError when |u| exceeds
/// the explosion bound.
Path simulate_em(const ModelParams& p);

/// Like simulate_em but records only every round(sample_interval/dt)-th
/// point at t >= burn_in; avoids materializing fine paths in ensembles.
std::vector<double> simulate_sampled(const ModelParams& p, double burn_in, double sample_interval);

EnsembleResult ensemble_indicators(const ModelParams& p, int n_realizations,
                                   const EnsembleOptions& options);

SweepResult sweep(const SweepSpec& spec);

}  // namespace slowdown
