#include "ehh/metrics.hpp"

#include <cmath>
#include <limits>

#include "ehh/errors.hpp"

namespace ehh {

namespace {

double population_var(const Eigen::VectorXd& v) {
    const double mean = v.mean();
    return (v.array() - mean).square().sum() / static_cast<double>(v.size());
}

}  // namespace

double vaf(const Eigen::VectorXd& predicted, const Eigen::VectorXd& actual) {
    if (predicted.size() != actual.size()) {
        throw DimensionMismatch("sequences differ in length");
    }
    if (actual.size() < 2) {
        throw DataError("variance needs at least 2 samples");
    }
    const double var_y = population_var(actual);
    if (var_y == 0.0) {
        throw ZeroVariance("actual sequence has zero variance");
    }
    const double var_e = population_var(predicted - actual);
    return std::max(0.0, 1.0 - var_e / var_y);
}

RmseResult rmse(const Eigen::VectorXd& predicted,
                const Eigen::VectorXd& actual) {
    if (predicted.size() != actual.size()) {
        throw DimensionMismatch("sequences differ in length");
    }
    if (actual.size() < 1) {
        throw DataError("rmse needs at least 1 sample");
    }
    RmseResult r;
    r.linear = std::sqrt((predicted - actual).squaredNorm() /
                         static_cast<double>(actual.size()));
    r.db = r.linear == 0.0 ? -std::numeric_limits<double>::infinity()
                           : 20.0 * std::log10(r.linear);
    return r;
}

}  // namespace ehh
