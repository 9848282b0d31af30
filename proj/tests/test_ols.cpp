#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "slowdown/errors.hpp"
#include "slowdown/ols.hpp"

using namespace slowdown;

TEST_CASE("exact linear system is fit with zero residual variance") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd x(20, 3);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) x(i, j) = normal(rng);
    Eigen::Vector3d beta(1.5, -2.0, 0.25);
    const Eigen::VectorXd y = x * beta;
    const auto fit = ols_fit(x, y);
    REQUIRE(fit.coefficients.size() == 3);
    for (int j = 0; j < 3; ++j)
        CHECK(fit.coefficients[static_cast<std::size_t>(j)] ==
              doctest::Approx(beta(j)).epsilon(1e-10));
    CHECK(fit.residual_variance == doctest::Approx(0.0).scale(1.0).epsilon(1e-16));
    CHECK(fit.n_obs == 20);
}

TEST_CASE("regressing on a column of ones recovers the mean") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(5, 1);
    Eigen::VectorXd y(5);
    y << 1.0, 2.0, 3.0, 4.0, 10.0;
    const auto fit = ols_fit(x, y);
    CHECK(fit.coefficients[0] == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("two-regressor system matches hand-solved normal equations") {
    // x values {1,2,3,5}, y {2,3,5,6}. Sxx = 35/4, Sxy = 9, so the slope is
    // 36/35 and the intercept 41/35; SSE = 26/35 gives s^2 = 13/35, and
    // (X'X)^-1 = [[39,-11],[-11,4]]/35 yields se = {13 sqrt(3), 2 sqrt(13)}/35.
    Eigen::MatrixXd x(4, 2);
    x << 1, 1, 1, 2, 1, 3, 1, 5;
    Eigen::VectorXd y(4);
    y << 2, 3, 5, 6;
    const auto fit = ols_fit(x, y);
    CHECK(fit.coefficients[0] == doctest::Approx(41.0 / 35.0).epsilon(1e-10));
    CHECK(fit.coefficients[1] == doctest::Approx(36.0 / 35.0).epsilon(1e-10));
    CHECK(fit.residual_variance == doctest::Approx(13.0 / 35.0).epsilon(1e-10));
    CHECK(fit.standard_errors[0] ==
          doctest::Approx(13.0 * std::sqrt(3.0) / 35.0).epsilon(1e-10));
    CHECK(fit.standard_errors[1] ==
          doctest::Approx(2.0 * std::sqrt(13.0) / 35.0).epsilon(1e-10));
    CHECK(fit.t_statistics[1] ==
          doctest::Approx(fit.coefficients[1] / fit.standard_errors[1]).epsilon(1e-12));
}

TEST_CASE("rank-deficient designs are rejected") {
    Eigen::MatrixXd x(6, 2);
    for (int i = 0; i < 6; ++i) {
        x(i, 0) = i + 1.0;
        x(i, 1) = 2.0 * (i + 1.0);  // collinear
    }
    const Eigen::VectorXd y = Eigen::VectorXd::Random(6);
    CHECK_THROWS_AS(ols_fit(x, y), SingularDesignError);
}

TEST_CASE("underdetermined systems are rejected") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(3, 3);
    Eigen::VectorXd y = Eigen::VectorXd::Random(3);
    CHECK_THROWS_AS(ols_fit(x, y), std::invalid_argument);
}
