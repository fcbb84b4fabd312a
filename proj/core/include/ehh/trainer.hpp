#ifndef EHH_TRAINER_HPP
#define EHH_TRAINER_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "ehh/lasso.hpp"
#include "ehh/model_selection.hpp"
#include "ehh/network.hpp"
#include "ehh/rng.hpp"

namespace ehh {

struct TrainConfig {
    int q = 1;                // hinge offsets per dimension
    int total_neurons = 0;    // M, source nodes included
    std::vector<double> zeta_grid = {0.001, 0.01, 0.05, 0.1, 0.5, 1.0};
    bool zeta_scale_by_std = true;  // grid is in units of std(y)
    double neuron_cost = 3.0;       // d in the GCV complexity term
    AdmmSettings admm;
    int max_cycles = 20;
    double cost_tolerance = 1e-4;   // relative per-cycle decrease
    enum class Mode { kColumn, kElement };
    Mode mode = Mode::kColumn;
    std::uint64_t seed = 0;
    int generation_retry_limit = 1000;

    // Throws InvalidConfig; n is the input dimension.
    void validate(int n) const;
};

struct CycleRecord {
    int cycle = 0;            // 0 is the initial generation
    double cost = 0.0;
    int active_neurons = 0;
    double lambda = 0.0;
    double wall_seconds = 0.0;
};

struct TrainState {
    EhhNetwork network;       // carries the current readout weights
    double lambda = 0.0;
    double cost = 0.0;
    int cycles_completed = 0;
    std::vector<CycleRecord> history;  // non-increasing cost per record
};

// Per-dimension offset lists for the source layer: 0 first, then the
// interior j/q empirical quantiles of the normalized samples. Exact
// duplicates (and values outside [0,1)) are collapsed with a warning;
// unless allow_degenerate is set, a dimension ending up with fewer than q
// distinct offsets throws DegenerateQuantiles.
struct QuantileResult {
    std::vector<std::vector<double>> offsets;
    std::vector<std::string> warnings;
};
QuantileResult quantile_offsets(const Eigen::MatrixXd& normalized_samples,
                                int q, bool allow_degenerate = false);

// Random DAG satisfying the construction rules: per-dimension hinge
// sources, then intermediates drawn uniformly over valid parent pairs
// (disjoint variable sets, no duplicate min-set), resampled on rejection.
// Throws GenerationStall after retry_limit consecutive rejections.
EhhNetwork generate_network(const NormalizationParams& normalization,
                            const std::vector<std::vector<double>>& offsets,
                            int total_neurons, Rng& rng,
                            int retry_limit = 1000);

// Initial network plus its first Lasso weights, with lambda picked by GCV
// over the zeta grid.
TrainState generate_initial(const TrainConfig& config, Rng& rng,
                            const Eigen::MatrixXd& samples_raw,
                            const Eigen::VectorXd& y);

// J = (y - Z alpha)^T (y - Z alpha) + lambda ||alpha||_1 with Z rebuilt
// from the network. Columns with an exactly zero coefficient contribute
// nothing, term by term, so pruning never changes the value.
double cost(const EhhNetwork& net, const Eigen::VectorXd& weights,
            const Eigen::MatrixXd& samples_raw, const Eigen::VectorXd& y,
            double lambda);

// One column of the structure search: scores every valid parent pair for
// the given intermediate node with the weights frozen, recomputing the
// node's column and every column downstream of it per candidate, and
// installs the least-cost pair (exact ties go to the lexicographically
// smallest pair; the incumbent is always among the candidates).
void structure_step_column(TrainState& state, int node,
                           const Eigen::MatrixXd& samples_raw,
                           const Eigen::VectorXd& y);

// Reduced neighbourhood: optimizes one parent holding the other, then the
// second holding the first, for at most 2(j-1) candidate evaluations.
void structure_step_element(TrainState& state, int node,
                            const Eigen::MatrixXd& samples_raw,
                            const Eigen::VectorXd& y);

// Alternating optimization: per cycle one structure pass over all
// intermediate columns followed by one Lasso solve and a prune of
// zero-weight rows. lambda is re-selected by GCV each cycle and adopted
// only when the re-selected solution does not raise the recorded cost, so
// the per-cycle cost history is non-increasing by construction. Stops when
// the relative per-cycle decrease falls below the tolerance or max_cycles
// is reached.
TrainState train(const TrainConfig& config, const Eigen::MatrixXd& samples_raw,
                 const Eigen::VectorXd& y);

double population_std(const Eigen::VectorXd& v);

// The zeta grid in absolute units (scaled by std(y) when configured so).
std::vector<double> effective_zeta_grid(const TrainConfig& config,
                                        const Eigen::VectorXd& y);

}  // namespace ehh

#endif  // EHH_TRAINER_HPP
