#pragma once

#include <Eigen/Dense>
#include <vector>

namespace slowdown {

struct OlsFit {
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::vector<double> t_statistics;  // coefficients / standard_errors
    double residual_variance = 0.0;    // SSR / (n - k)
    int n_obs = 0;
};

/// Ordinary least squares with full-rank checking. Throws
/// SingularDesignError on rank-deficient designs and std::invalid_argument
/// when rows < columns + 1 (no residual degrees of freedom).
OlsFit ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

}  // namespace slowdown
