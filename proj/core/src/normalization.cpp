#include "ehh/normalization.hpp"

namespace ehh {

Eigen::VectorXd NormalizationParams::apply(const Eigen::VectorXd& raw) const {
    if (raw.size() != min.size()) {
        throw DimensionMismatch("normalizer expects " +
                                std::to_string(min.size()) +
                                " inputs, got " + std::to_string(raw.size()));
    }
    return (raw - min).cwiseQuotient(max - min);
}

Eigen::MatrixXd NormalizationParams::apply_rows(
    const Eigen::MatrixXd& raw) const {
    if (raw.cols() != min.size()) {
        throw DimensionMismatch("normalizer expects " +
                                std::to_string(min.size()) +
                                " columns, got " + std::to_string(raw.cols()));
    }
    Eigen::MatrixXd out(raw.rows(), raw.cols());
    for (Eigen::Index j = 0; j < raw.cols(); ++j) {
        out.col(j) = (raw.col(j).array() - min(j)) / (max(j) - min(j));
    }
    return out;
}

NormalizationParams NormalizationParams::identity(int n) {
    return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n)};
}

NormalizationParams fit_normalizer(const Eigen::MatrixXd& samples) {
    if (samples.rows() < 2) {
        throw DataError("need at least 2 samples to fit the normalizer");
    }
    NormalizationParams p;
    p.min = samples.colwise().minCoeff();
    p.max = samples.colwise().maxCoeff();
    for (Eigen::Index i = 0; i < samples.cols(); ++i) {
        if (!(p.max(i) > p.min(i))) {
            throw ConstantDimension(static_cast<int>(i));
        }
    }
    return p;
}

}  // namespace ehh
