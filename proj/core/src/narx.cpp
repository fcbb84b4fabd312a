#include "ehh/narx.hpp"

#include <cmath>

namespace ehh {

namespace {

void check_spec(const NarxSpec& spec) {
    if (spec.output_lags < 1 || spec.input_lags < 0) {
        throw InvalidConfig("lag spec requires n_b >= 1 and n_a >= 0");
    }
}

// Regressor for time k (1-based) pulled from arbitrary output/input
// accessors, shared by the batch builder and the free-run loop.
template <typename GetY, typename GetU>
Eigen::VectorXd regressor_at(int k, const NarxSpec& spec, GetY&& get_y,
                             GetU&& get_u) {
    Eigen::VectorXd phi(spec.regressor_dim());
    int c = 0;
    for (int lag = 1; lag <= spec.output_lags; ++lag) {
        phi(c++) = get_y(k - lag);
    }
    if (spec.include_current_input) phi(c++) = get_u(k);
    for (int lag = 1; lag <= spec.input_lags; ++lag) {
        phi(c++) = get_u(k - lag);
    }
    return phi;
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::VectorXd> build_regressors(
    const IoData& data, const NarxSpec& spec) {
    check_spec(spec);
    if (data.u.size() != data.y.size()) {
        throw DimensionMismatch("input and output sequences differ in length");
    }
    const int n = static_cast<int>(data.y.size());
    const int start = spec.max_lag() + 1;  // first predictable time, 1-based
    if (n < start) {
        throw InsufficientData("sequence of length " + std::to_string(n) +
                               " is too short for max lag " +
                               std::to_string(spec.max_lag()));
    }
    const int rows = n - spec.max_lag();
    Eigen::MatrixXd phi(rows, spec.regressor_dim());
    Eigen::VectorXd target(rows);
    const auto get_y = [&](int k) { return data.y(k - 1); };
    const auto get_u = [&](int k) { return data.u(k - 1); };
    for (int r = 0; r < rows; ++r) {
        const int k = start + r;
        phi.row(r) = regressor_at(k, spec, get_y, get_u).transpose();
        target(r) = data.y(k - 1);
    }
    return {std::move(phi), std::move(target)};
}

Eigen::VectorXd predict_one_step(const EhhNetwork& model, const IoData& data,
                                 const NarxSpec& spec) {
    if (spec.regressor_dim() != model.input_dim()) {
        throw SpecMismatch("regressor dimension " +
                           std::to_string(spec.regressor_dim()) +
                           " does not match the model input dimension " +
                           std::to_string(model.input_dim()));
    }
    const auto [phi, target] = build_regressors(data, spec);
    Eigen::VectorXd out(phi.rows());
    for (Eigen::Index r = 0; r < phi.rows(); ++r) {
        out(r) = model.evaluate(phi.row(r).transpose());
    }
    return out;
}

SimResult simulate_free_run(const EhhNetwork& model, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& seed_outputs,
                            const NarxSpec& spec, double guard) {
    check_spec(spec);
    if (spec.regressor_dim() != model.input_dim()) {
        throw SpecMismatch("regressor dimension " +
                           std::to_string(spec.regressor_dim()) +
                           " does not match the model input dimension " +
                           std::to_string(model.input_dim()));
    }
    const int n = static_cast<int>(u.size());
    const int max_lag = spec.max_lag();
    if (seed_outputs.size() < max_lag) {
        throw InsufficientData("free run needs " + std::to_string(max_lag) +
                               " seed outputs, got " +
                               std::to_string(seed_outputs.size()));
    }
    SimResult result;
    result.first_simulated = max_lag;  // 0-based
    result.simulated.resize(n);
    result.simulated.head(max_lag) = seed_outputs.head(max_lag);
    const int steps = n - max_lag;
    result.regressors.resize(std::max(steps, 0), spec.regressor_dim());

    const auto get_y = [&](int k) { return result.simulated(k - 1); };
    const auto get_u = [&](int k) { return u(k - 1); };
    for (int k = max_lag + 1; k <= n; ++k) {
        const Eigen::VectorXd phi = regressor_at(k, spec, get_y, get_u);
        result.regressors.row(k - max_lag - 1) = phi.transpose();
        const double ys = model.evaluate(phi);
        if (!(std::abs(ys) <= guard)) {
            throw NumericOverflow(ys, k);
        }
        result.simulated(k - 1) = ys;
    }
    return result;
}

}  // namespace ehh
