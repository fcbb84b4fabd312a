#ifndef EHH_ANOVA_HPP
#define EHH_ANOVA_HPP

#include <vector>

#include <Eigen/Core>

#include "ehh/network.hpp"

namespace ehh {

// One additive component of the network output: the weighted sum of all
// neurons sharing the same variable-index set.
struct AnovaEntry {
    std::vector<int> variables;     // the set S, sorted
    std::vector<int> members;       // node indices with that set, sorted
    double sigma = 0.0;             // std dev of the component over the data
    double gcv_without = 0.0;       // GCV of the model refit without it
    bool singular_refit = false;    // reduced normal system was rank-deficient
};

struct AnovaReport {
    std::vector<AnovaEntry> entries;  // keyed by S, lexicographic order

    // Copy sorted by sigma descending; ties fall back to the set order.
    std::vector<AnovaEntry> by_sigma() const;
};

// Structural grouping only: every hidden node lands in exactly one entry,
// entries with identical variable sets are merged. The weighted entry sums
// plus alpha_0 reproduce the network output pointwise.
AnovaReport anova_decompose(const EhhNetwork& net);

// Adds the importance figures: sigma is the population standard deviation
// of the entry's weighted output sum over the training samples, and
// gcv_without is the GCV of a least-squares refit with the entry's neuron
// columns removed from the data matrix (rank-deficient refits fall back to
// a pseudo-inverse and are flagged).
AnovaReport anova_importance(const EhhNetwork& net,
                             const Eigen::MatrixXd& samples_raw,
                             const Eigen::VectorXd& targets,
                             double neuron_cost = 3.0);

}  // namespace ehh

#endif  // EHH_ANOVA_HPP
