#include "slowdown/ols.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "slowdown/errors.hpp"

namespace slowdown {

OlsFit ols_fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
    const Eigen::Index n = design.rows();
    const Eigen::Index k = design.cols();
    if (response.size() != n) {
        throw std::invalid_argument("ols_fit: design has " + std::to_string(n) +
                                    " rows but response has " + std::to_string(response.size()));
    }
    if (n < k + 1) {
        throw std::invalid_argument("ols_fit: need at least " + std::to_string(k + 1) +
                                    " rows for " + std::to_string(k) + " columns, got " +
                                    std::to_string(n));
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        throw SingularDesignError("ols_fit: design matrix is rank deficient (rank " +
                                  std::to_string(qr.rank()) + " of " + std::to_string(k) + ")");
    }

    const Eigen::VectorXd beta = qr.solve(response);
    const Eigen::VectorXd resid = response - design * beta;
    const double ssr = resid.squaredNorm();
    const double s2 = ssr / static_cast<double>(n - k);

    // Var(beta) = s^2 (X'X)^-1; k is small here, a direct inverse is fine.
    const Eigen::MatrixXd xtx_inv = (design.transpose() * design).inverse();

    OlsFit fit;
    fit.n_obs = static_cast<int>(n);
    fit.residual_variance = s2;
    fit.coefficients.resize(k);
    fit.standard_errors.resize(k);
    fit.t_statistics.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        fit.coefficients[j] = beta(j);
        fit.standard_errors[j] = std::sqrt(std::max(0.0, s2 * xtx_inv(j, j)));
        fit.t_statistics[j] = fit.coefficients[j] / fit.standard_errors[j];
    }
    return fit;
}

}  // namespace slowdown
