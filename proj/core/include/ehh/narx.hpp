#ifndef EHH_NARX_HPP
#define EHH_NARX_HPP

#include <utility>

#include <Eigen/Core>

#include "ehh/network.hpp"

namespace ehh {

// Lag structure of the regressor
//   [y(k-1), ..., y(k-n_b), u(k), u(k-1), ..., u(k-n_a)].
// Dropping the current input removes the u(k) term, leaving
// u(k-1), ..., u(k-n_a).
struct NarxSpec {
    int output_lags = 1;               // n_b >= 1
    int input_lags = 0;                // n_a >= 0
    bool include_current_input = true;

    int regressor_dim() const {
        return output_lags + input_lags + (include_current_input ? 1 : 0);
    }
    int max_lag() const { return std::max(output_lags, input_lags); }
};

// Measured input/output record, equal lengths, 0-based storage for
// u(1..N), y(1..N).
struct IoData {
    Eigen::VectorXd u;
    Eigen::VectorXd y;
};

// Regressor matrix and aligned targets. Row r corresponds to time
// k = max_lag + 1 + r (1-based) and predicts y(k).
std::pair<Eigen::MatrixXd, Eigen::VectorXd> build_regressors(
    const IoData& data, const NarxSpec& spec);

// One-step-ahead predictions over the valid range of data, using measured
// lags. Aligned with build_regressors' rows.
Eigen::VectorXd predict_one_step(const EhhNetwork& model, const IoData& data,
                                 const NarxSpec& spec);

struct SimResult {
    Eigen::VectorXd simulated;   // full-length sequence, seeded head
    Eigen::MatrixXd regressors;  // the regressor used at each simulated step
    int first_simulated = 0;     // 0-based index of the first simulated entry
    // Filled by callers that compare against a measured record.
    double vaf = 0.0;
    double rmse = 0.0;
    double rmse_db = 0.0;
};

// Free-run simulation: the regressor is rebuilt each step from previously
// simulated outputs and the measured input only. seed_outputs provides the
// first max_lag measured values. Aborts with NumericOverflow when the
// simulated output leaves [-guard, guard].
SimResult simulate_free_run(const EhhNetwork& model, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& seed_outputs,
                            const NarxSpec& spec, double guard = 1e6);

}  // namespace ehh

#endif  // EHH_NARX_HPP
