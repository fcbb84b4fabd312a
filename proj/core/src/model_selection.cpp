#include "ehh/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace ehh {

int numeric_rank(const Eigen::MatrixXd& z) {
    if (z.rows() == 0 || z.cols() == 0) return 0;
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(z);
    const auto& sv = svd.singularValues();
    const double tol = std::max(z.rows(), z.cols()) *
                       std::numeric_limits<double>::epsilon() * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol) ++rank;
    }
    return rank;
}

double gcv_from_matrix(const Eigen::MatrixXd& z,
                       const Eigen::VectorXd& weights,
                       const Eigen::VectorXd& y, double neuron_cost) {
    const double n_s = static_cast<double>(z.rows());
    const int active = static_cast<int>(z.cols()) - 1;
    const double complexity = numeric_rank(z) + neuron_cost * active;
    if (complexity >= n_s) {
        throw Saturated(complexity, z.rows());
    }
    const double rss = (y - z * weights).squaredNorm();
    const double denom = 1.0 - complexity / n_s;
    return rss / (n_s * denom * denom);
}

double gcv(const EhhNetwork& net, const Eigen::VectorXd& weights,
           const Eigen::MatrixXd& samples_raw, const Eigen::VectorXd& y,
           double neuron_cost) {
    return gcv_from_matrix(net.data_matrix(samples_raw), weights, y,
                           neuron_cost);
}

LambdaSelection select_lambda(const EhhNetwork& net,
                              const Eigen::MatrixXd& samples_raw,
                              const Eigen::VectorXd& y,
                              const std::vector<double>& zeta_grid,
                              double neuron_cost, const AdmmSettings& admm,
                              const Eigen::VectorXd* warm_start) {
    if (zeta_grid.empty()) {
        throw InvalidConfig("zeta grid is empty");
    }
    const Eigen::MatrixXd z = net.data_matrix(samples_raw);
    const double l_alpha = static_cast<double>(z.cols());
    const double factor = std::sqrt(2.0 * std::log(l_alpha));

    LambdaSelection sel;
    std::vector<double> grid = zeta_grid;
    std::sort(grid.begin(), grid.end());

    for (double zeta : grid) {
        LambdaCandidate cand;
        cand.zeta = zeta;
        cand.lambda = zeta * factor;
        try {
            cand.solution = lasso_admm(z, y, cand.lambda, admm, warm_start);
            const EhhNetwork trimmed =
                net.with_weights(cand.solution.weights).pruned();
            cand.active_neurons = trimmed.node_count();
            cand.gcv = gcv_from_matrix(trimmed.data_matrix(samples_raw),
                                       trimmed.weights(), y, neuron_cost);
            if (!std::isfinite(cand.gcv)) {
                cand.failed = true;
                cand.error = "non-finite GCV";
            }
        } catch (const Error& e) {
            cand.failed = true;
            cand.error = e.what();
        }
        sel.table.push_back(std::move(cand));
    }

    for (std::size_t i = 0; i < sel.table.size(); ++i) {
        const auto& cand = sel.table[i];
        if (cand.failed) continue;
        // <= so that an exact tie moves to the larger zeta (grid is sorted).
        if (sel.selected < 0 ||
            cand.gcv <= sel.table[sel.selected].gcv) {
            sel.selected = static_cast<int>(i);
        }
    }
    if (sel.selected < 0) {
        throw TrainError("no usable point in the zeta grid: every candidate "
                         "failed");
    }
    const auto& best = sel.table[sel.selected];
    sel.lambda = best.lambda;
    sel.zeta = best.zeta;
    sel.weights = best.solution.weights;
    return sel;
}

}  // namespace ehh
