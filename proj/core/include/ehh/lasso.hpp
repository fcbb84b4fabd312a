#ifndef EHH_LASSO_HPP
#define EHH_LASSO_HPP

#include <Eigen/Core>

namespace ehh {

struct AdmmSettings {
    double rho = 1.0;
    double abs_tol = 1e-6;
    double rel_tol = 1e-4;
    int max_iter = 2000;
    double over_relaxation = 1.5;
};

struct LassoSolution {
    Eigen::VectorXd weights;      // the sparse consensus iterate
    double objective = 0.0;       // (y - Z w)^T (y - Z w) + lambda ||w||_1
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    bool converged = false;       // false carries the best iterate anyway
};

// Solves   min_w (y - Z w)^T (y - Z w) + lambda ||w||_1
// by ADMM with over-relaxation. Every coefficient is penalized, including
// the one multiplying the constant column. Non-convergence within
// max_iter is reported through the flag and residuals, not thrown.
LassoSolution lasso_admm(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                         double lambda, const AdmmSettings& settings = {},
                         const Eigen::VectorXd* warm_start = nullptr);

}  // namespace ehh

#endif  // EHH_LASSO_HPP
