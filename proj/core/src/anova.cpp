#include "ehh/anova.hpp"

#include <algorithm>
#include <map>

#include <Eigen/QR>

#include "ehh/model_selection.hpp"

namespace ehh {

std::vector<AnovaEntry> AnovaReport::by_sigma() const {
    std::vector<AnovaEntry> out = entries;
    std::stable_sort(out.begin(), out.end(),
                     [](const AnovaEntry& a, const AnovaEntry& b) {
                         return a.sigma > b.sigma;
                     });
    return out;
}

AnovaReport anova_decompose(const EhhNetwork& net) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int j = 0; j < net.node_count(); ++j) {
        groups[net.variable_set(j)].push_back(j);
    }
    AnovaReport report;
    for (auto& [vars, members] : groups) {
        AnovaEntry entry;
        entry.variables = vars;
        entry.members = std::move(members);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

AnovaReport anova_importance(const EhhNetwork& net,
                             const Eigen::MatrixXd& samples_raw,
                             const Eigen::VectorXd& targets,
                             double neuron_cost) {
    if (!net.has_weights()) {
        throw Error("importance requires readout weights");
    }
    AnovaReport report = anova_decompose(net);
    const Eigen::MatrixXd z = net.data_matrix(samples_raw);
    const Eigen::VectorXd& alpha = net.weights();
    const double n_s = static_cast<double>(z.rows());

    for (auto& entry : report.entries) {
        Eigen::VectorXd component = Eigen::VectorXd::Zero(z.rows());
        for (int j : entry.members) {
            component += alpha(j + 1) * z.col(j + 1);
        }
        const double mean = component.mean();
        entry.sigma =
            std::sqrt((component.array() - mean).square().sum() / n_s);

        // Refit without the entry's columns. The constant column stays.
        std::vector<int> keep;
        keep.push_back(0);
        for (int j = 0; j < net.node_count(); ++j) {
            if (!std::binary_search(entry.members.begin(),
                                    entry.members.end(), j)) {
                keep.push_back(j + 1);
            }
        }
        Eigen::MatrixXd z_red(z.rows(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t c = 0; c < keep.size(); ++c) {
            z_red.col(static_cast<Eigen::Index>(c)) = z.col(keep[c]);
        }
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(z_red);
        entry.singular_refit = qr.rank() < z_red.cols();
        const Eigen::VectorXd refit = qr.solve(targets);
        entry.gcv_without =
            gcv_from_matrix(z_red, refit, targets, neuron_cost);
    }
    return report;
}

}  // namespace ehh
