#include "ehh/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

namespace ehh {

namespace {

std::vector<int> merge_sorted(const std::vector<int>& a,
                              const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(),
               std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool sorted_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return false;
        if (*ia < *ib) ++ia; else ++ib;
    }
    return true;
}

}  // namespace

double eval_source(const SourceNodeSpec& node, const Eigen::VectorXd& x_norm) {
    return std::max(0.0, x_norm(node.variable) - node.offset);
}

EhhNetwork::EhhNetwork(NormalizationParams normalization,
                       std::vector<SourceNodeSpec> sources,
                       std::vector<IntermediateNodeSpec> intermediates,
                       Eigen::VectorXd weights)
    : normalization_(std::move(normalization)),
      sources_(std::move(sources)),
      intermediates_(std::move(intermediates)),
      weights_(std::move(weights)) {
    const int n_d = source_count();
    const int m = node_count();
    // Bounds checks only; rule conformance is reported by validate() so
    // that malformed structures remain representable and inspectable.
    for (int j = 0; j < n_d; ++j) {
        const int v = sources_[j].variable;
        if (v < 0 || v >= input_dim()) {
            throw DimensionMismatch("source node " + std::to_string(j) +
                                    " references variable " +
                                    std::to_string(v) + " outside 0.." +
                                    std::to_string(input_dim() - 1));
        }
    }
    for (std::size_t t = 0; t < intermediates_.size(); ++t) {
        auto& node = intermediates_[t];
        if (node.parent1 > node.parent2) std::swap(node.parent1, node.parent2);
        if (node.parent1 < 0 || node.parent2 >= m) {
            throw DimensionMismatch("intermediate node " + std::to_string(t) +
                                    " has a parent index outside 0.." +
                                    std::to_string(m - 1));
        }
    }
    if (weights_.size() > 0 && weights_.size() != m + 1) {
        throw DimensionMismatch("weight vector has length " +
                                std::to_string(weights_.size()) +
                                ", expected " + std::to_string(m + 1));
    }

    variable_sets_.resize(m);
    min_sets_.resize(m);
    for (int j = 0; j < n_d; ++j) {
        variable_sets_[j] = {sources_[j].variable};
        min_sets_[j] = {j};
    }
    for (int j = n_d; j < m; ++j) {
        const auto& node = intermediates_[j - n_d];
        // Forward references (parent >= j) break Rule 1; the sets computed
        // here are then partial, which is fine — validate() reports the
        // breach and evaluation of such a network is refused by callers.
        variable_sets_[j] = merge_sorted(variable_sets_[node.parent1],
                                         variable_sets_[node.parent2]);
        min_sets_[j] = merge_sorted(min_sets_[node.parent1],
                                    min_sets_[node.parent2]);
    }
}

EhhNetwork EhhNetwork::with_weights(Eigen::VectorXd weights) const {
    return EhhNetwork(normalization_, sources_, intermediates_,
                      std::move(weights));
}

Eigen::VectorXd EhhNetwork::node_outputs(const Eigen::VectorXd& x_norm) const {
    if (x_norm.size() != input_dim()) {
        throw DimensionMismatch("input has " + std::to_string(x_norm.size()) +
                                " entries, network expects " +
                                std::to_string(input_dim()));
    }
    const int n_d = source_count();
    const int m = node_count();
    Eigen::VectorXd out(m);
    for (int j = 0; j < n_d; ++j) {
        out(j) = std::max(0.0, x_norm(sources_[j].variable) -
                                   sources_[j].offset);
    }
    for (int j = n_d; j < m; ++j) {
        const auto& node = intermediates_[j - n_d];
        out(j) = std::min(out(node.parent1), out(node.parent2));
    }
    return out;
}

EhhNetwork::Forward EhhNetwork::forward(const Eigen::VectorXd& x_raw) const {
    Forward result;
    result.nodes = node_outputs(normalization_.apply(x_raw));
    double f = 0.0;
    if (has_weights()) {
        f = weights_(0);
        for (int k = 0; k < node_count(); ++k) {
            f += weights_(k + 1) * result.nodes(k);
        }
    }
    result.output = f;
    return result;
}

double EhhNetwork::evaluate(const Eigen::VectorXd& x_raw) const {
    return forward(x_raw).output;
}

Eigen::MatrixXd EhhNetwork::data_matrix(
    const Eigen::MatrixXd& samples_raw) const {
    if (samples_raw.cols() != input_dim() && samples_raw.rows() > 0) {
        throw DimensionMismatch("samples have " +
                                std::to_string(samples_raw.cols()) +
                                " columns, network expects " +
                                std::to_string(input_dim()));
    }
    const Eigen::Index n_s = samples_raw.rows();
    const int n_d = source_count();
    const int m = node_count();
    Eigen::MatrixXd z(n_s, m + 1);
    if (n_s == 0) return z;
    z.col(0).setOnes();
    const Eigen::MatrixXd xn = normalization_.apply_rows(samples_raw);
    for (int j = 0; j < n_d; ++j) {
        z.col(j + 1) = (xn.col(sources_[j].variable).array() -
                        sources_[j].offset).max(0.0);
    }
    for (int j = n_d; j < m; ++j) {
        const auto& node = intermediates_[j - n_d];
        z.col(j + 1) = z.col(node.parent1 + 1).cwiseMin(z.col(node.parent2 + 1));
    }
    return z;
}

const std::vector<int>& EhhNetwork::min_form(int node) const {
    return min_sets_.at(node);
}

const std::vector<int>& EhhNetwork::variable_set(int node) const {
    return variable_sets_.at(node);
}

ValidationReport EhhNetwork::validate() const {
    ValidationReport report;
    const int n_d = source_count();
    const int m = node_count();

    for (int j = 0; j < n_d; ++j) {
        const double beta = sources_[j].offset;
        if (!(beta >= 0.0 && beta < 1.0)) {
            report.violations.push_back(
                {j, RuleViolation::kOffsetRange,
                 "offset " + std::to_string(beta) + " outside [0,1)"});
        }
    }
    for (int j = n_d; j < m; ++j) {
        const auto& node = intermediates_[j - n_d];
        if (node.parent1 >= j || node.parent2 >= j) {
            report.violations.push_back(
                {j, RuleViolation::kParentOrder,
                 "parent index not smaller than own index " +
                     std::to_string(j)});
            continue;  // variable sets below this node are unreliable
        }
        if (node.parent1 == node.parent2) {
            report.violations.push_back(
                {j, RuleViolation::kColumnDegree,
                 "both edges come from node " + std::to_string(node.parent1)});
            continue;
        }
        if (!sorted_disjoint(variable_sets_[node.parent1],
                             variable_sets_[node.parent2])) {
            report.violations.push_back(
                {j, RuleViolation::kSharedVariable,
                 "parents " + std::to_string(node.parent1) + " and " +
                     std::to_string(node.parent2) +
                     " share an input variable"});
        }
    }
    // Duplicate min-sets are permitted but worth flagging: the duplicated
    // neuron is redundant.
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < j; ++i) {
            if (min_sets_[i] == min_sets_[j]) {
                report.warnings.push_back(
                    {j, RuleViolation::kDuplicateMinSet,
                     "computes the same min-set as node " +
                         std::to_string(i)});
                break;
            }
        }
    }
    return report;
}

EhhNetwork EhhNetwork::pruned() const {
    if (!has_weights()) {
        throw Error("prune requires readout weights");
    }
    const int n_d = source_count();
    const int m = node_count();
    std::vector<bool> alive(m, true);
    std::vector<int> child_count(m, 0);
    for (const auto& node : intermediates_) {
        ++child_count[node.parent1];
        ++child_count[node.parent2];
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = m - 1; j >= 0; --j) {
            if (alive[j] && weights_(j + 1) == 0.0 && child_count[j] == 0) {
                alive[j] = false;
                changed = true;
                if (j >= n_d) {
                    const auto& node = intermediates_[j - n_d];
                    --child_count[node.parent1];
                    --child_count[node.parent2];
                }
            }
        }
    }

    std::vector<int> remap(m, -1);
    int next = 0;
    for (int j = 0; j < m; ++j) {
        if (alive[j]) remap[j] = next++;
    }
    std::vector<SourceNodeSpec> new_sources;
    std::vector<IntermediateNodeSpec> new_inters;
    for (int j = 0; j < n_d; ++j) {
        if (alive[j]) new_sources.push_back(sources_[j]);
    }
    for (int j = n_d; j < m; ++j) {
        if (!alive[j]) continue;
        const auto& node = intermediates_[j - n_d];
        new_inters.push_back({remap[node.parent1], remap[node.parent2]});
    }
    Eigen::VectorXd new_weights(next + 1);
    new_weights(0) = weights_(0);
    for (int j = 0; j < m; ++j) {
        if (alive[j]) new_weights(remap[j] + 1) = weights_(j + 1);
    }
    return EhhNetwork(normalization_, std::move(new_sources),
                      std::move(new_inters), std::move(new_weights));
}

EhhNetwork full_connection_network(int n, int q, double max_nodes) {
    if (n < 1 || q < 1) {
        throw InvalidConfig("full connection requires n >= 1 and q >= 1");
    }
    const double budget = std::pow(static_cast<double>(q) + 1.0, n);
    if (budget > max_nodes) {
        throw ResourceBound("(q+1)^n = " + std::to_string(budget) +
                            " exceeds the cap " + std::to_string(max_nodes));
    }

    std::vector<SourceNodeSpec> sources;
    sources.reserve(static_cast<std::size_t>(n) * q);
    for (int v = 0; v < n; ++v) {
        for (int j = 0; j < q; ++j) {
            sources.push_back({v, static_cast<double>(j) / q});
        }
    }
    const auto source_index = [q](int v, int j) { return v * q + j; };

    // One neuron per distinct min-set, built level by level: a level-r
    // neuron pairs the source on its smallest variable with the level-(r-1)
    // neuron over the remaining variables.
    std::vector<IntermediateNodeSpec> inters;
    std::map<std::vector<int>, int> node_of_set;
    const int n_d = n * q;

    std::vector<int> dims(n);
    for (int v = 0; v < n; ++v) dims[v] = v;

    // Enumerate variable subsets of size r in lexicographic order, then all
    // offset tuples per subset.
    std::vector<int> subset;
    const std::function<void(int, int)> enumerate = [&](int start, int need) {
        if (need == 0) {
            std::vector<int> offs(subset.size(), 0);
            while (true) {
                std::vector<int> key;
                key.reserve(subset.size());
                for (std::size_t i = 0; i < subset.size(); ++i) {
                    key.push_back(source_index(subset[i], offs[i]));
                }
                int tail;
                if (subset.size() == 2) {
                    tail = key[1];
                } else {
                    tail = node_of_set.at(
                        std::vector<int>(key.begin() + 1, key.end()));
                }
                const int own = n_d + static_cast<int>(inters.size());
                inters.push_back({key[0], tail});
                node_of_set.emplace(std::move(key), own);

                int pos = static_cast<int>(offs.size()) - 1;
                while (pos >= 0 && ++offs[pos] == q) offs[pos--] = 0;
                if (pos < 0) break;
            }
            return;
        }
        for (int v = start; v <= n - need; ++v) {
            subset.push_back(v);
            enumerate(v + 1, need - 1);
            subset.pop_back();
        }
    };
    for (int r = 2; r <= n; ++r) {
        enumerate(0, r);
    }

    return EhhNetwork(NormalizationParams::identity(n), std::move(sources),
                      std::move(inters));
}

}  // namespace ehh
