#ifndef EHH_NETWORK_HPP
#define EHH_NETWORK_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "ehh/errors.hpp"
#include "ehh/normalization.hpp"

namespace ehh {

// Source node: a univariate hinge max{0, x_v - beta} on one normalized
// input variable. Offsets live in [0, 1).
struct SourceNodeSpec {
    int variable = 0;
    double offset = 0.0;
};

// Intermediate node: elementwise min of exactly two earlier hidden nodes.
// Parents are stored sorted (parent1 < parent2); the pair is the source of
// truth for the hidden-layer DAG, which guarantees two inputs per node by
// construction.
struct IntermediateNodeSpec {
    int parent1 = 0;
    int parent2 = 0;
};

// Hinge activation of a single source node on a normalized input.
double eval_source(const SourceNodeSpec& node, const Eigen::VectorXd& x_norm);

enum class RuleViolation {
    kParentOrder,       // a parent index is not smaller than the node's own
    kSharedVariable,    // the two parents' variable sets intersect
    kColumnDegree,      // a column does not hold exactly two edges
    kNotUpperTriangular,
    kSourceHasParents,
    kOffsetRange,       // beta outside [0, 1)
    kVariableRange,
    kDuplicateMinSet,   // advisory: two nodes compute the same min-set
};

struct Violation {
    int node = -1;
    RuleViolation rule = RuleViolation::kParentOrder;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;  // structural rule breaches
    std::vector<Violation> warnings;    // advisory flags (duplicate min-sets)
    bool ok() const { return violations.empty(); }
};

// Single-hidden-layer piecewise-linear network whose hidden layer is a DAG:
// N_d univariate hinge sources followed by N_c binary-min intermediates,
// with an affine readout over all M = N_d + N_c nodes.
//
// Immutable after construction; evaluation methods are const and safe to
// call from many threads. prune() returns a new value.
class EhhNetwork {
public:
    EhhNetwork() = default;  // empty network over zero inputs
    EhhNetwork(NormalizationParams normalization,
               std::vector<SourceNodeSpec> sources,
               std::vector<IntermediateNodeSpec> intermediates,
               Eigen::VectorXd weights = Eigen::VectorXd());

    int input_dim() const { return normalization_.dim(); }
    int source_count() const { return static_cast<int>(sources_.size()); }
    int node_count() const {
        return static_cast<int>(sources_.size() + intermediates_.size());
    }

    const NormalizationParams& normalization() const { return normalization_; }
    const std::vector<SourceNodeSpec>& sources() const { return sources_; }
    const std::vector<IntermediateNodeSpec>& intermediates() const {
        return intermediates_;
    }

    bool has_weights() const { return weights_.size() > 0; }
    // Readout coefficients [alpha_0, alpha_1, ..., alpha_M].
    const Eigen::VectorXd& weights() const { return weights_; }
    EhhNetwork with_weights(Eigen::VectorXd weights) const;

    // Hidden-node outputs for one normalized input, in index order. A single
    // pass suffices: parents always precede children.
    Eigen::VectorXd node_outputs(const Eigen::VectorXd& x_norm) const;

    struct Forward {
        Eigen::VectorXd nodes;  // M per-node outputs
        double output = 0.0;    // alpha_0 + sum_k alpha_k nn_k
    };
    Forward forward(const Eigen::VectorXd& x_raw) const;
    double evaluate(const Eigen::VectorXd& x_raw) const;

    // Data matrix over raw samples: column 0 all ones, column k the k-th
    // node's outputs, N_s x (M+1).
    Eigen::MatrixXd data_matrix(const Eigen::MatrixXd& samples_raw) const;

    // Index set of source nodes whose hinges the node's output is the min
    // of; {j} for a source node. Sorted ascending.
    const std::vector<int>& min_form(int node) const;

    // Indices of input variables the node depends on. Sorted ascending.
    const std::vector<int>& variable_set(int node) const;

    ValidationReport validate() const;

    // Repeatedly removes nodes with zero readout weight and no surviving
    // children (source nodes included), compacting indices. The returned
    // network evaluates to the same output everywhere.
    EhhNetwork pruned() const;

private:
    NormalizationParams normalization_;
    std::vector<SourceNodeSpec> sources_;
    std::vector<IntermediateNodeSpec> intermediates_;
    Eigen::VectorXd weights_;
    std::vector<std::vector<int>> variable_sets_;
    std::vector<std::vector<int>> min_sets_;
};

// Hidden layer containing one neuron per distinct min-combination of source
// hinges over pairwise-distinct variables, with the uniform offset grid
// beta_j = j/q per dimension. Neuron count is sum_r C(n,r) q^r, one less
// than (q+1)^n. Weights are left unset; the normalization is the identity
// on [0,1]^n.
//
// Throws ResourceBound when (q+1)^n exceeds max_nodes.
EhhNetwork full_connection_network(int n, int q, double max_nodes = 65536.0);

}  // namespace ehh

#endif  // EHH_NETWORK_HPP
