#include "ehh/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

namespace ehh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

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

// Type-7 empirical quantile (linear interpolation between order statistics).
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - std::floor(h);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// Shared machinery of the two structure-step flavours: candidate scoring
// for one intermediate column with the readout weights frozen.
class ColumnSearch {
public:
    ColumnSearch(const EhhNetwork& net, int node,
                 const Eigen::MatrixXd& samples_raw, const Eigen::VectorXd& y)
        : net_(net), node_(node), y_(y) {
        const int n_d = net.source_count();
        const int m = net.node_count();
        if (node < n_d || node >= m) {
            throw InvalidConfig("structure step expects an intermediate node "
                                "index, got " + std::to_string(node));
        }
        if (!net.has_weights()) {
            throw Error("structure step requires frozen readout weights");
        }
        z_ = net.data_matrix(samples_raw);
        alpha_ = net.weights();

        // Descendants of the node under the current edges; their columns
        // are the only ones a candidate can change.
        std::vector<std::vector<int>> children(m);
        for (int j = n_d; j < m; ++j) {
            const auto& spec = net.intermediates()[j - n_d];
            children[spec.parent1].push_back(j);
            children[spec.parent2].push_back(j);
        }
        std::vector<char> in_set(m, 0);
        std::vector<int> stack = {node};
        in_set[node] = 1;
        while (!stack.empty()) {
            const int j = stack.back();
            stack.pop_back();
            for (int c : children[j]) {
                if (!in_set[c]) {
                    in_set[c] = 1;
                    stack.push_back(c);
                }
            }
        }
        for (int j = node; j < m; ++j) {
            if (in_set[j]) changed_.push_back(j);
        }
        scratch_index_.assign(m, -1);
        for (std::size_t i = 0; i < changed_.size(); ++i) {
            scratch_index_[changed_[i]] = static_cast<int>(i);
        }
        scratch_.resize(z_.rows(), static_cast<Eigen::Index>(changed_.size()));

        fixed_part_ = Eigen::VectorXd::Constant(z_.rows(), alpha_(0));
        for (int k = 0; k < m; ++k) {
            if (scratch_index_[k] < 0 && alpha_(k + 1) != 0.0) {
                fixed_part_ += alpha_(k + 1) * z_.col(k + 1);
            }
        }
    }

    // Cost of replacing the node's parent pair, or no value when the pair
    // breaks a rule anywhere in the affected subgraph or duplicates another
    // node's min-set.
    bool score(int a, int b, double* rss) {
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        if (b >= node_) return false;
        if (!sorted_disjoint(net_.variable_set(a), net_.variable_set(b))) {
            return false;
        }
        const std::vector<int> min_set =
            merge_sorted(net_.min_form(a), net_.min_form(b));
        for (int k = 0; k < net_.node_count(); ++k) {
            if (k != node_ && net_.min_form(k) == min_set) return false;
        }
        // Variable sets downstream of the change must stay pairwise
        // disjoint at every min.
        const int n_d = net_.source_count();
        std::vector<std::vector<int>> new_sets(changed_.size());
        new_sets[0] = merge_sorted(net_.variable_set(a), net_.variable_set(b));
        for (std::size_t i = 1; i < changed_.size(); ++i) {
            const int j = changed_[i];
            const auto& spec = net_.intermediates()[j - n_d];
            const auto& s1 = scratch_index_[spec.parent1] >= 0
                                 ? new_sets[scratch_index_[spec.parent1]]
                                 : net_.variable_set(spec.parent1);
            const auto& s2 = scratch_index_[spec.parent2] >= 0
                                 ? new_sets[scratch_index_[spec.parent2]]
                                 : net_.variable_set(spec.parent2);
            if (!sorted_disjoint(s1, s2)) return false;
            new_sets[i] = merge_sorted(s1, s2);
        }

        scratch_.col(0) = column(a).cwiseMin(column(b));
        for (std::size_t i = 1; i < changed_.size(); ++i) {
            const int j = changed_[i];
            const auto& spec = net_.intermediates()[j - n_d];
            scratch_.col(static_cast<Eigen::Index>(i)) =
                candidate_column(spec.parent1)
                    .cwiseMin(candidate_column(spec.parent2));
        }
        Eigen::VectorXd p = fixed_part_;
        for (std::size_t i = 0; i < changed_.size(); ++i) {
            const double w = alpha_(changed_[i] + 1);
            if (w != 0.0) p += w * scratch_.col(static_cast<Eigen::Index>(i));
        }
        *rss = (y_ - p).squaredNorm();
        return true;
    }

    int node() const { return node_; }

private:
    // Column of a node not affected by the candidate.
    Eigen::MatrixXd::ConstColXpr column(int k) const { return z_.col(k + 1); }

    Eigen::VectorXd candidate_column(int k) const {
        if (scratch_index_[k] >= 0) {
            return scratch_.col(scratch_index_[k]);
        }
        return z_.col(k + 1);
    }

    const EhhNetwork& net_;
    int node_;
    const Eigen::VectorXd& y_;
    Eigen::MatrixXd z_;
    Eigen::VectorXd alpha_;
    std::vector<int> changed_;        // node_ and its descendants, ascending
    std::vector<int> scratch_index_;  // node -> column of scratch_, or -1
    Eigen::MatrixXd scratch_;
    Eigen::VectorXd fixed_part_;
};

struct PairChoice {
    int parent1 = -1;
    int parent2 = -1;
    double rss = 0.0;
    bool found = false;

    void offer(int a, int b, double value) {
        if (a > b) std::swap(a, b);
        if (!found || value < rss ||
            (value == rss &&
             std::pair(a, b) < std::pair(parent1, parent2))) {
            parent1 = a;
            parent2 = b;
            rss = value;
            found = true;
        }
    }
};

void install_pair(TrainState& state, int node, const PairChoice& choice,
                  const Eigen::MatrixXd& samples_raw,
                  const Eigen::VectorXd& y) {
    const EhhNetwork& net = state.network;
    const int n_d = net.source_count();
    const auto& incumbent = net.intermediates()[node - n_d];
    if (!choice.found || (choice.parent1 == incumbent.parent1 &&
                          choice.parent2 == incumbent.parent2)) {
        return;
    }
    std::vector<IntermediateNodeSpec> inters = net.intermediates();
    inters[node - n_d] = {choice.parent1, choice.parent2};
    state.network = EhhNetwork(net.normalization(), net.sources(),
                               std::move(inters), net.weights());
    state.cost = cost(state.network, state.network.weights(), samples_raw, y,
                      state.lambda);
}

}  // namespace

void TrainConfig::validate(int n) const {
    if (q < 1) throw InvalidConfig("q must be at least 1");
    if (total_neurons < n * q) {
        throw InvalidConfig("neuron budget " + std::to_string(total_neurons) +
                            " is below the source count " +
                            std::to_string(n * q));
    }
    if (zeta_grid.empty()) throw InvalidConfig("zeta grid is empty");
    if (neuron_cost <= 0.0) throw InvalidConfig("neuron cost must be positive");
    if (max_cycles < 0) throw InvalidConfig("max cycles must be nonnegative");
    if (cost_tolerance < 0.0) {
        throw InvalidConfig("cost tolerance must be nonnegative");
    }
}

double population_std(const Eigen::VectorXd& v) {
    const double mean = v.mean();
    return std::sqrt((v.array() - mean).square().sum() /
                     static_cast<double>(v.size()));
}

std::vector<double> effective_zeta_grid(const TrainConfig& config,
                                        const Eigen::VectorXd& y) {
    std::vector<double> grid = config.zeta_grid;
    if (config.zeta_scale_by_std) {
        const double scale = population_std(y);
        for (double& z : grid) z *= scale;
    }
    return grid;
}

QuantileResult quantile_offsets(const Eigen::MatrixXd& normalized_samples,
                                int q, bool allow_degenerate) {
    if (q < 1) throw InvalidConfig("q must be at least 1");
    if (normalized_samples.rows() < 1) {
        throw InsufficientData("no samples to take quantiles of");
    }
    QuantileResult result;
    const int n = static_cast<int>(normalized_samples.cols());
    result.offsets.resize(n);
    for (int dim = 0; dim < n; ++dim) {
        std::vector<double> column(
            normalized_samples.col(dim).data(),
            normalized_samples.col(dim).data() + normalized_samples.rows());
        std::sort(column.begin(), column.end());
        std::vector<double> betas = {0.0};
        for (int j = 1; j < q; ++j) {
            betas.push_back(quantile_sorted(column, static_cast<double>(j) /
                                                        static_cast<double>(q)));
        }
        std::sort(betas.begin(), betas.end());
        std::vector<double> distinct;
        for (double b : betas) {
            if (b < 0.0 || b >= 1.0) continue;
            if (distinct.empty() || b != distinct.back()) {
                distinct.push_back(b);
            }
        }
        if (static_cast<int>(distinct.size()) < q) {
            result.warnings.push_back(
                "dimension " + std::to_string(dim) + ": collapsed to " +
                std::to_string(distinct.size()) + " distinct offsets of " +
                std::to_string(q));
            if (!allow_degenerate) {
                throw DegenerateQuantiles(
                    dim, static_cast<int>(distinct.size()), q);
            }
        }
        result.offsets[dim] = std::move(distinct);
    }
    return result;
}

EhhNetwork generate_network(const NormalizationParams& normalization,
                            const std::vector<std::vector<double>>& offsets,
                            int total_neurons, Rng& rng, int retry_limit) {
    std::vector<SourceNodeSpec> sources;
    for (int v = 0; v < static_cast<int>(offsets.size()); ++v) {
        for (double beta : offsets[v]) sources.push_back({v, beta});
    }
    const int n_d = static_cast<int>(sources.size());
    if (total_neurons < n_d) {
        throw InvalidConfig("neuron budget " + std::to_string(total_neurons) +
                            " is below the source count " +
                            std::to_string(n_d));
    }

    std::vector<std::vector<int>> var_sets(total_neurons);
    std::vector<std::vector<int>> min_sets(total_neurons);
    for (int j = 0; j < n_d; ++j) {
        var_sets[j] = {sources[j].variable};
        min_sets[j] = {j};
    }
    std::vector<IntermediateNodeSpec> inters;
    for (int j = n_d; j < total_neurons; ++j) {
        int attempts = 0;
        while (true) {
            int a = rng.uniform_int(j);
            int b = rng.uniform_int(j);
            bool ok = a != b;
            if (ok) {
                if (a > b) std::swap(a, b);
                ok = sorted_disjoint(var_sets[a], var_sets[b]);
            }
            std::vector<int> min_set;
            if (ok) {
                min_set = merge_sorted(min_sets[a], min_sets[b]);
                for (int k = 0; k < j && ok; ++k) {
                    if (min_sets[k] == min_set) ok = false;
                }
            }
            if (ok) {
                var_sets[j] = merge_sorted(var_sets[a], var_sets[b]);
                min_sets[j] = std::move(min_set);
                inters.push_back({a, b});
                break;
            }
            if (++attempts >= retry_limit) {
                throw GenerationStall(j);
            }
        }
    }
    return EhhNetwork(normalization, std::move(sources), std::move(inters));
}

double cost(const EhhNetwork& net, const Eigen::VectorXd& weights,
            const Eigen::MatrixXd& samples_raw, const Eigen::VectorXd& y,
            double lambda) {
    const Eigen::MatrixXd z = net.data_matrix(samples_raw);
    if (weights.size() != z.cols()) {
        throw DimensionMismatch("weight vector has length " +
                                std::to_string(weights.size()) +
                                ", expected " + std::to_string(z.cols()));
    }
    if (y.size() != z.rows()) {
        throw DimensionMismatch("target vector has length " +
                                std::to_string(y.size()) + ", expected " +
                                std::to_string(z.rows()));
    }
    // Fixed column-by-column accumulation; exactly-zero coefficients are
    // skipped so that removing their columns cannot change a single bit.
    Eigen::VectorXd p = Eigen::VectorXd::Constant(z.rows(), weights(0));
    for (Eigen::Index k = 1; k < z.cols(); ++k) {
        if (weights(k) != 0.0) p += weights(k) * z.col(k);
    }
    double penalty = 0.0;
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
        if (weights(k) != 0.0) penalty += std::abs(weights(k));
    }
    return (y - p).squaredNorm() + lambda * penalty;
}

void structure_step_column(TrainState& state, int node,
                           const Eigen::MatrixXd& samples_raw,
                           const Eigen::VectorXd& y) {
    ColumnSearch search(state.network, node, samples_raw, y);
    PairChoice best;
    for (int b = 1; b < node; ++b) {
        for (int a = 0; a < b; ++a) {
            double rss;
            if (search.score(a, b, &rss)) best.offer(a, b, rss);
        }
    }
    install_pair(state, node, best, samples_raw, y);
}

void structure_step_element(TrainState& state, int node,
                            const Eigen::MatrixXd& samples_raw,
                            const Eigen::VectorXd& y) {
    const int n_d = state.network.source_count();
    const auto incumbent = state.network.intermediates()[node - n_d];
    const int held = incumbent.parent2;
    {
        ColumnSearch search(state.network, node, samples_raw, y);
        PairChoice best;
        for (int a = 0; a < node; ++a) {
            if (a == held) continue;
            double rss;
            if (search.score(a, held, &rss)) best.offer(a, held, rss);
        }
        install_pair(state, node, best, samples_raw, y);
    }
    {
        // Phase two fixes the parent phase one produced and re-optimizes
        // the slot that was held.
        const auto mid = state.network.intermediates()[node - n_d];
        const int fixed = mid.parent1 == held ? mid.parent2 : mid.parent1;
        ColumnSearch search(state.network, node, samples_raw, y);
        PairChoice best;
        for (int b = 0; b < node; ++b) {
            if (b == fixed) continue;
            double rss;
            if (search.score(fixed, b, &rss)) best.offer(fixed, b, rss);
        }
        install_pair(state, node, best, samples_raw, y);
    }
}

TrainState generate_initial(const TrainConfig& config, Rng& rng,
                            const Eigen::MatrixXd& samples_raw,
                            const Eigen::VectorXd& y) {
    config.validate(static_cast<int>(samples_raw.cols()));
    if (samples_raw.rows() != y.size() || y.size() == 0) {
        throw DimensionMismatch("samples and targets do not line up");
    }
    const auto t0 = Clock::now();
    const NormalizationParams norm = fit_normalizer(samples_raw);
    const QuantileResult quantiles =
        quantile_offsets(norm.apply_rows(samples_raw), config.q);
    EhhNetwork net =
        generate_network(norm, quantiles.offsets, config.total_neurons, rng,
                         config.generation_retry_limit);
    const LambdaSelection sel =
        select_lambda(net, samples_raw, y, effective_zeta_grid(config, y),
                      config.neuron_cost, config.admm);

    TrainState state{net.with_weights(sel.weights), sel.lambda, 0.0, 0, {}};
    state.cost =
        cost(state.network, state.network.weights(), samples_raw, y,
             state.lambda);
    state.history.push_back({0, state.cost, state.network.node_count(),
                             state.lambda, seconds_since(t0)});
    return state;
}

TrainState train(const TrainConfig& config,
                 const Eigen::MatrixXd& samples_raw,
                 const Eigen::VectorXd& y) {
    Rng rng(config.seed);
    TrainState state = generate_initial(config, rng, samples_raw, y);
    const std::vector<double> grid = effective_zeta_grid(config, y);

    for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
        const auto t0 = Clock::now();
        const double previous_cost = state.cost;
        const TrainState snapshot = state;

        for (int j = state.network.source_count();
             j < state.network.node_count(); ++j) {
            if (config.mode == TrainConfig::Mode::kColumn) {
                structure_step_column(state, j, samples_raw, y);
            } else {
                structure_step_element(state, j, samples_raw, y);
            }
        }
        const double structure_cost = state.cost;

        // Weight step at the cycle's lambda, never worse than the frozen
        // incumbent weights.
        const Eigen::MatrixXd z = state.network.data_matrix(samples_raw);
        const Eigen::VectorXd incumbent = state.network.weights();
        const LassoSolution fixed =
            lasso_admm(z, y, state.lambda, config.admm, &incumbent);
        Eigen::VectorXd next_weights = fixed.weights;
        double next_cost =
            cost(state.network, next_weights, samples_raw, y, state.lambda);
        double next_lambda = state.lambda;
        if (next_cost > structure_cost) {
            next_weights = incumbent;
            next_cost = structure_cost;
        }

        // GCV re-selection of lambda; adopted only when the re-selected
        // solution does not raise the recorded cost, which keeps the
        // history comparable and non-increasing.
        const LambdaSelection sel =
            select_lambda(state.network, samples_raw, y, grid,
                          config.neuron_cost, config.admm, &incumbent);
        const double candidate_cost = cost(state.network, sel.weights,
                                           samples_raw, y, sel.lambda);
        if (candidate_cost <= next_cost) {
            next_weights = sel.weights;
            next_cost = candidate_cost;
            next_lambda = sel.lambda;
        }

        if (next_cost > previous_cost) {
            state = snapshot;  // numerically stuck; keep the better state
            break;
        }

        state.network = state.network.with_weights(next_weights).pruned();
        state.lambda = next_lambda;
        state.cost = next_cost;
        state.cycles_completed = cycle;
        state.history.push_back({cycle, state.cost,
                                 state.network.node_count(), state.lambda,
                                 seconds_since(t0)});

        const double decrease = previous_cost - next_cost;
        const double scale = std::max(std::abs(previous_cost), 1e-300);
        if (decrease / scale < config.cost_tolerance) break;
    }
    return state;
}

}  // namespace ehh
