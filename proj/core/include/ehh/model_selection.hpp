#ifndef EHH_MODEL_SELECTION_HPP
#define EHH_MODEL_SELECTION_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "ehh/lasso.hpp"
#include "ehh/network.hpp"

namespace ehh {

// Numerical rank: singular values above max(rows, cols) * eps * sv_max.
int numeric_rank(const Eigen::MatrixXd& z);

// Generalized cross-validation score
//   GCV = RSS / (N_s (1 - C/N_s)^2),   C = rank(Z) + d * M,
// where M is the number of hidden-node columns in Z (the constant column
// is excluded from M but participates in the rank). Throws Saturated when
// C >= N_s.
double gcv_from_matrix(const Eigen::MatrixXd& z,
                       const Eigen::VectorXd& weights,
                       const Eigen::VectorXd& y, double neuron_cost);

double gcv(const EhhNetwork& net, const Eigen::VectorXd& weights,
           const Eigen::MatrixXd& samples_raw, const Eigen::VectorXd& y,
           double neuron_cost = 3.0);

struct LambdaCandidate {
    double zeta = 0.0;
    double lambda = 0.0;
    double gcv = 0.0;
    int active_neurons = 0;  // hidden nodes left after pruning the solution
    LassoSolution solution;
    bool failed = false;
    std::string error;
};

struct LambdaSelection {
    double lambda = 0.0;
    double zeta = 0.0;
    Eigen::VectorXd weights;     // solution at the selected lambda
    int selected = -1;           // index into table
    std::vector<LambdaCandidate> table;
};

// Sweeps the zeta grid: lambda = zeta * sqrt(2 log l_alpha) with l_alpha
// the current weight-vector length, solves the Lasso per point, prunes a
// copy and scores it by GCV. The point with the least GCV wins; exact ties
// go to the larger zeta (the sparser model). Grid points whose solve or
// score fails are excluded and reported in the table.
LambdaSelection select_lambda(const EhhNetwork& net,
                              const Eigen::MatrixXd& samples_raw,
                              const Eigen::VectorXd& y,
                              const std::vector<double>& zeta_grid,
                              double neuron_cost = 3.0,
                              const AdmmSettings& admm = {},
                              const Eigen::VectorXd* warm_start = nullptr);

}  // namespace ehh

#endif  // EHH_MODEL_SELECTION_HPP
