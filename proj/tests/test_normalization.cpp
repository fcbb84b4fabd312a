#include <doctest.h>

#include "ehh/normalization.hpp"

using ehh::fit_normalizer;
using ehh::NormalizationParams;

TEST_CASE("fit maps training columns onto [0,1] endpoints") {
    Eigen::MatrixXd samples(3, 1);
    samples << 0.0, 2.0, 4.0;
    const NormalizationParams p = fit_normalizer(samples);
    const Eigen::MatrixXd norm = p.apply_rows(samples);
    CHECK(norm(0, 0) == 0.0);
    CHECK(norm(1, 0) == 0.5);
    CHECK(norm(2, 0) == 1.0);
}

TEST_CASE("fit handles the benchmark input range") {
    Eigen::MatrixXd samples(2, 1);
    samples << -2.0, 2.0;
    const NormalizationParams p = fit_normalizer(samples);
    CHECK(p.apply(Eigen::VectorXd::Constant(1, -2.0))(0) == 0.0);
    CHECK(p.apply(Eigen::VectorXd::Constant(1, 2.0))(0) == 1.0);
}

TEST_CASE("constant column is rejected") {
    Eigen::MatrixXd samples(3, 2);
    samples << 0.0, 5.0, 1.0, 5.0, 2.0, 5.0;
    CHECK_THROWS_AS(fit_normalizer(samples), ehh::ConstantDimension);
}

TEST_CASE("apply extrapolates without clipping") {
    NormalizationParams p{Eigen::VectorXd::Zero(1),
                          Eigen::VectorXd::Constant(1, 4.0)};
    CHECK(p.apply(Eigen::VectorXd::Constant(1, 2.0))(0) == 0.5);
    CHECK(p.apply(Eigen::VectorXd::Constant(1, 5.0))(0) == 1.25);
    CHECK(p.apply(Eigen::VectorXd::Constant(1, -4.0))(0) == -1.0);
}

TEST_CASE("apply rejects wrong input length") {
    NormalizationParams p{Eigen::VectorXd::Zero(1),
                          Eigen::VectorXd::Constant(1, 4.0)};
    CHECK_THROWS_AS(p.apply(Eigen::VectorXd::Zero(2)),
                    ehh::DimensionMismatch);
}
