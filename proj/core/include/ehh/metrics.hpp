#ifndef EHH_METRICS_HPP
#define EHH_METRICS_HPP

#include <Eigen/Core>

namespace ehh {

// Variance accounted for: max{0, 1 - var(predicted - actual) / var(actual)},
// population variances. Throws ZeroVariance (a DataError) when the actual
// sequence is constant.
double vaf(const Eigen::VectorXd& predicted, const Eigen::VectorXd& actual);

struct RmseResult {
    double linear = 0.0;
    double db = 0.0;  // 20 log10(rmse); -inf when the error is exactly zero
};

RmseResult rmse(const Eigen::VectorXd& predicted,
                const Eigen::VectorXd& actual);

}  // namespace ehh

#endif  // EHH_METRICS_HPP
