#ifndef EHH_NORMALIZATION_HPP
#define EHH_NORMALIZATION_HPP

#include <Eigen/Core>

#include "ehh/errors.hpp"

namespace ehh {

// Per-dimension affine map sending the training range of each raw input
// onto [0, 1]. Out-of-range inputs are mapped by the same affine rule
// without clipping; negative or >1 values are legitimate at test time and
// the hinge activations absorb them.
struct NormalizationParams {
    Eigen::VectorXd min;
    Eigen::VectorXd max;

    int dim() const { return static_cast<int>(min.size()); }

    Eigen::VectorXd apply(const Eigen::VectorXd& raw) const;

    // Row-wise application to an N_s x n sample matrix.
    Eigen::MatrixXd apply_rows(const Eigen::MatrixXd& raw) const;

    // Identity map on [0,1]^n, for networks built directly in the
    // normalized domain.
    static NormalizationParams identity(int n);
};

// Fits the map from raw training samples (one row per sample).
// Throws ConstantDimension when a column has max == min.
NormalizationParams fit_normalizer(const Eigen::MatrixXd& samples);

}  // namespace ehh

#endif  // EHH_NORMALIZATION_HPP
