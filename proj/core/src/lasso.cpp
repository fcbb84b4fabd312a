#include "ehh/lasso.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "ehh/errors.hpp"

namespace ehh {

namespace {

double soft_threshold(double v, double k) {
    if (v > k) return v - k;
    if (v < -k) return v + k;
    return 0.0;
}

}  // namespace

LassoSolution lasso_admm(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                         double lambda, const AdmmSettings& settings,
                         const Eigen::VectorXd* warm_start) {
    if (z.rows() != y.size()) {
        throw DimensionMismatch("data matrix has " + std::to_string(z.rows()) +
                                " rows, target has " +
                                std::to_string(y.size()));
    }
    if (lambda < 0.0) {
        throw InvalidConfig("lambda must be nonnegative");
    }
    const Eigen::Index p = z.cols();
    const double rho = settings.rho;

    // Minimizing ||y - Z w||^2 + lambda ||w||_1 splits into
    //   w-step: (2 Z^T Z + rho I) w = 2 Z^T y + rho (v - u)
    //   v-step: soft threshold at lambda / rho
    Eigen::MatrixXd gram = 2.0 * (z.transpose() * z);
    gram.diagonal().array() += rho;
    const Eigen::LLT<Eigen::MatrixXd> chol(gram);
    const Eigen::VectorXd zty2 = 2.0 * (z.transpose() * y);

    Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd v = warm_start && warm_start->size() == p
                            ? *warm_start
                            : Eigen::VectorXd::Zero(p);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(p);

    LassoSolution result;
    const double sqrt_p = std::sqrt(static_cast<double>(p));
    const double relax = settings.over_relaxation;

    for (int iter = 1; iter <= settings.max_iter; ++iter) {
        w = chol.solve(zty2 + rho * (v - u));
        const Eigen::VectorXd v_old = v;
        const Eigen::VectorXd w_hat = relax * w + (1.0 - relax) * v_old;
        for (Eigen::Index i = 0; i < p; ++i) {
            v(i) = soft_threshold(w_hat(i) + u(i), lambda / rho);
        }
        u += w_hat - v;

        result.iterations = iter;
        result.primal_residual = (w - v).norm();
        result.dual_residual = (rho * (v - v_old)).norm();
        const double eps_pri =
            sqrt_p * settings.abs_tol +
            settings.rel_tol * std::max(w.norm(), v.norm());
        const double eps_dual =
            sqrt_p * settings.abs_tol + settings.rel_tol * (rho * u).norm();
        if (result.primal_residual < eps_pri &&
            result.dual_residual < eps_dual) {
            result.converged = true;
            break;
        }
    }

    result.weights = v;
    result.objective =
        (y - z * v).squaredNorm() + lambda * v.lpNorm<1>();
    return result;
}

}  // namespace ehh
