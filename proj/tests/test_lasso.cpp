#include <doctest.h>

#include <Eigen/Dense>

#include "ehh/lasso.hpp"
#include "support/oracles.hpp"

using ehh::AdmmSettings;
using ehh::lasso_admm;
using ehh::LassoSolution;

namespace {

AdmmSettings tight() {
    AdmmSettings s;
    s.abs_tol = 1e-10;
    s.rel_tol = 1e-8;
    s.max_iter = 50000;
    return s;
}

}  // namespace

TEST_CASE("lambda zero recovers ordinary least squares") {
    ehh::Rng rng(21);
    const Eigen::MatrixXd z = oracle::random_matrix(rng, 100, 8, -1.0, 1.0);
    const Eigen::VectorXd y = oracle::random_vector(rng, 100, -2.0, 2.0);
    const LassoSolution sol = lasso_admm(z, y, 0.0, tight());

    const Eigen::VectorXd ls =
        (z.transpose() * z).ldlt().solve(z.transpose() * y);
    const double obj_ls = (y - z * ls).squaredNorm();
    CHECK(sol.objective ==
          doctest::Approx(obj_ls).epsilon(1e-8));
}

TEST_CASE("orthonormal columns soft-threshold in closed form") {
    // Build an orthonormal Z via QR of a random matrix.
    ehh::Rng rng(22);
    const Eigen::MatrixXd raw = oracle::random_matrix(rng, 60, 6, -1.0, 1.0);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    const Eigen::MatrixXd z =
        qr.householderQ() * Eigen::MatrixXd::Identity(60, 6);
    const Eigen::VectorXd y = oracle::random_vector(rng, 60, -2.0, 2.0);
    const double lambda = 0.3;

    const LassoSolution sol = lasso_admm(z, y, lambda, tight());
    const Eigen::VectorXd zty = z.transpose() * y;
    for (int k = 0; k < 6; ++k) {
        // The unscaled quadratic puts the threshold at lambda / 2.
        double expect = 0.0;
        if (zty(k) > lambda / 2.0) expect = zty(k) - lambda / 2.0;
        if (zty(k) < -lambda / 2.0) expect = zty(k) + lambda / 2.0;
        CHECK(sol.weights(k) == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("objective matches a coordinate-descent reference") {
    ehh::Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd z =
            oracle::random_matrix(rng, 200, 31, -1.0, 1.0);
        const Eigen::VectorXd y = oracle::random_vector(rng, 200, -2.0, 2.0);
        const double lambda = rng.uniform(0.5, 20.0);

        const LassoSolution sol = lasso_admm(z, y, lambda, tight());
        const Eigen::VectorXd ref =
            oracle::coordinate_descent_lasso(z, y, lambda);
        const double obj_ref =
            (y - z * ref).squaredNorm() + lambda * ref.lpNorm<1>();
        CHECK(std::abs(sol.objective - obj_ref) <= 1e-6 * obj_ref);
    }
}

TEST_CASE("reported objective is computed on the returned weights") {
    ehh::Rng rng(24);
    const Eigen::MatrixXd z = oracle::random_matrix(rng, 50, 5, -1.0, 1.0);
    const Eigen::VectorXd y = oracle::random_vector(rng, 50, -1.0, 1.0);
    const LassoSolution sol = lasso_admm(z, y, 1.0);
    const double recomputed = (y - z * sol.weights).squaredNorm() +
                              1.0 * sol.weights.lpNorm<1>();
    CHECK(sol.objective == doctest::Approx(recomputed).epsilon(1e-14));
}

TEST_CASE("iteration cap reports non-convergence with the best iterate") {
    ehh::Rng rng(25);
    const Eigen::MatrixXd z = oracle::random_matrix(rng, 80, 10, -1.0, 1.0);
    const Eigen::VectorXd y = oracle::random_vector(rng, 80, -1.0, 1.0);
    AdmmSettings s;
    s.max_iter = 1;
    const LassoSolution sol = lasso_admm(z, y, 0.5, s);
    CHECK_FALSE(sol.converged);
    CHECK(sol.iterations == 1);
    CHECK(sol.weights.size() == 10);
    CHECK(sol.primal_residual >= 0.0);
}

TEST_CASE("negative lambda is rejected") {
    CHECK_THROWS_AS(lasso_admm(Eigen::MatrixXd::Ones(2, 1),
                               Eigen::VectorXd::Ones(2), -1.0),
                    ehh::InvalidConfig);
}

TEST_CASE("shape mismatch is rejected") {
    CHECK_THROWS_AS(lasso_admm(Eigen::MatrixXd::Ones(3, 1),
                               Eigen::VectorXd::Ones(2), 1.0),
                    ehh::DimensionMismatch);
}
